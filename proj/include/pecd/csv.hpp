#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pecd::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    // Optional text first column (header[0] names it); empty when all columns are numeric.
    std::vector<std::string> labels;
};

// 17 significant digits, so values survive a write/read round trip exactly.
std::string format(double x);

void write(std::ostream& os, const Table& t);
Table read(std::istream& is);

} // namespace pecd::csv
