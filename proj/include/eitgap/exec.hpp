#ifndef EITGAP_EXEC_HPP
#define EITGAP_EXEC_HPP

namespace eitgap {

// Grid points (frequencies, cells, sweep points) are independent, so the
// parallel path partitions them with OpenMP and produces output identical
// to the serial reference.
enum class ExecutionPolicy { serial, parallel };

} // namespace eitgap

#endif
