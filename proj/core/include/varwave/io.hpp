#ifndef VARWAVE_IO_HPP
#define VARWAVE_IO_HPP

#include <ostream>
#include <string>
#include <vector>

namespace varwave {

// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double v);

// One header row, then data rows; fields joined with ','.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace varwave

#endif
