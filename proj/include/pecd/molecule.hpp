#pragma once

#include "pecd/pad.hpp"
#include "pecd/twophoton.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pecd::molecule {

struct StateRecord {
    std::string label;
    double excitation_energy_eV = 0;
    std::optional<twophoton::CartesianTensor> left, right, effective;
    // Effective tensor as printed in the source tables; kept for comparison only.
    std::optional<twophoton::CartesianTensor> reference_effective;
    std::optional<pad::ExcitedState> coefficients;

    // The tensor used in calculations: the effective one, or left and right combined.
    twophoton::CartesianTensor tensor() const;
    bool has_left_right() const { return left.has_value() && right.has_value(); }
};

struct Molecule {
    std::string name;
    std::string enantiomer;
    std::vector<StateRecord> states;
    std::optional<std::array<double, 6>> experimental; // normalized c_1..c_6
    std::optional<double> experimental_energy_eV;

    const StateRecord& state(const std::string& label) const;
};

// Both throw ValidationError with the offending field in the message.
Molecule parse_molecule(const std::string& json_text, const std::string& source = "<input>");
Molecule load_molecule(const std::string& path);

// Coefficient block: {"n": 3, "real": {"S0": 1.0, ...}} and/or
// {"complex": [{"n": 3, "l": 1, "m": -1, "re": 0.1, "im": 0.2}, ...]}.
pad::ExcitedState parse_coefficients(const std::string& json_text, const std::string& source = "<input>");
pad::ExcitedState load_coefficients(const std::string& path);

// Bundled data directory (compiled-in default, overridable with PECD_DATA_DIR).
std::string data_dir();

} // namespace pecd::molecule
