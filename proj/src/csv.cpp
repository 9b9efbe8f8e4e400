#include "pecd/csv.hpp"
#include "pecd/errors.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace pecd::csv {

std::string format(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write(std::ostream& os, const Table& t)
{
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << '\n';
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const bool labelled = !t.labels.empty();
        if (labelled) os << t.labels.at(r);
        for (std::size_t i = 0; i < row.size(); ++i) os << (i || labelled ? "," : "") << format(row[i]);
        os << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

} // namespace

Table read(std::istream& is)
{
    Table t;
    std::string line;
    if (!std::getline(is, line)) throw ValidationError("empty CSV input");
    t.header = split(line);
    bool first = true, labelled = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto cells = split(line);
        if (first && !cells.empty()) {
            try {
                std::size_t used = 0;
                std::stod(cells[0], &used);
                labelled = used != cells[0].size();
            } catch (const std::exception&) {
                labelled = true;
            }
            first = false;
        }
        if (labelled) {
            if (cells.empty()) throw ValidationError("CSV row is missing its label");
            t.labels.push_back(cells.front());
            cells.erase(cells.begin());
        }
        std::vector<double> row;
        for (const auto& cell : cells) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cell.size() || cell.empty()) throw ValidationError("CSV cell is not a number: '" + cell + "'");
            row.push_back(v);
        }
        if (row.size() + (labelled ? 1 : 0) != t.header.size()) throw ValidationError("CSV row width does not match the header");
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace pecd::csv
