#include "pecd/molecule.hpp"
#include "pecd/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pecd::molecule {

using json = nlohmann::json;
using cplx = std::complex<double>;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ValidationError(where + ": " + what);
}

double number(const json& j, const std::string& where)
{
    if (!j.is_number()) fail(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(where, "value is not finite");
    return v;
}

// Tensor as {"xx": .., "xy": .., ...} (mirror keys yx, zx, zy optional) or a 3x3 array.
twophoton::CartesianTensor parse_tensor(const json& j, const std::string& where)
{
    double m[3][3];
    bool seen[3][3] = {};
    const char axes[] = "xyz";
    if (j.is_array()) {
        if (j.size() != 3) fail(where, "tensor matrix must have 3 rows");
        for (int a = 0; a < 3; ++a) {
            if (!j[a].is_array() || j[a].size() != 3) fail(where, "tensor matrix must be 3x3");
            for (int b = 0; b < 3; ++b) {
                m[a][b] = number(j[a][b], where + "[" + std::to_string(a) + "][" + std::to_string(b) + "]");
                seen[a][b] = true;
            }
        }
    } else if (j.is_object()) {
        for (const auto& [key, val] : j.items()) {
            if (key.size() != 2 || std::string("xyz").find(key[0]) == std::string::npos ||
                std::string("xyz").find(key[1]) == std::string::npos)
                fail(where, "unknown tensor component '" + key + "'");
            const int a = key[0] - 'x', b = key[1] - 'x';
            m[a][b] = number(val, where + "." + key);
            seen[a][b] = true;
        }
    } else {
        fail(where, "tensor must be an object or a 3x3 array");
    }
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
            const std::string name{axes[a], axes[b]};
            const std::string mirror{axes[b], axes[a]};
            if (!seen[a][b] && !seen[b][a]) fail(where, "missing tensor component " + name);
            if (!seen[a][b]) m[a][b] = m[b][a];
            if (!seen[b][a]) m[b][a] = m[a][b];
            if (std::abs(m[a][b] - m[b][a]) > 1e-12 * std::max(1.0, std::abs(m[a][b])))
                fail(where, "tensor is not symmetric: component " + name + " differs from " + mirror);
        }
    return {m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2]};
}

pad::ExcitedState parse_coeff_block(const json& j, const std::string& where)
{
    if (!j.is_object()) fail(where, "coefficient block must be an object");
    pad::ExcitedState st;
    for (const auto& [key, val] : j.items())
        if (key != "n" && key != "real" && key != "complex") fail(where, "unknown field '" + key + "'");
    if (j.contains("real")) {
        if (!j.contains("n") || !j["n"].is_number_integer()) fail(where + ".n", "integer principal quantum number required");
        const int n = j["n"].get<int>();
        std::map<std::string, double> labels;
        for (const auto& [label, v] : j["real"].items()) labels[label] = number(v, where + ".real." + label);
        std::map<std::pair<int, int>, cplx> c;
        try {
            c = angular::real_to_complex_coeffs(labels);
        } catch (const ValidationError& e) {
            fail(where + ".real", e.what());
        }
        for (const auto& [lm, a] : c) {
            if (lm.first > n - 1) fail(where + ".real", "l = " + std::to_string(lm.first) + " not allowed for n = " + std::to_string(n));
            st.coeffs[{n, lm.first, lm.second}] += a;
        }
    }
    if (j.contains("complex")) {
        const auto& arr = j["complex"];
        if (!arr.is_array()) fail(where + ".complex", "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string w = where + ".complex[" + std::to_string(i) + "]";
            const auto& e = arr[i];
            for (const char* f : {"n", "l", "m"})
                if (!e.contains(f) || !e[f].is_number_integer()) fail(w + "." + f, "integer required");
            const pad::BasisState b{e["n"].get<int>(), e["l"].get<int>(), e["m"].get<int>()};
            const double re = e.contains("re") ? number(e["re"], w + ".re") : 0.0;
            const double im = e.contains("im") ? number(e["im"], w + ".im") : 0.0;
            st.coeffs[b] += cplx(re, im);
        }
    }
    try {
        st.validate();
    } catch (const ValidationError& e) {
        fail(where, e.what());
    }
    return st;
}

json parse_text(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(source + ": malformed JSON (" + e.what() + ")");
    }
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

twophoton::CartesianTensor StateRecord::tensor() const
{
    if (effective) return *effective;
    if (has_left_right()) return twophoton::effective_tensor(*left, *right);
    throw ValidationError("state " + label + " has no two-photon tensor");
}

const StateRecord& Molecule::state(const std::string& label) const
{
    for (const auto& s : states)
        if (s.label == label) return s;
    throw ValidationError("molecule " + name + " has no state '" + label + "'");
}

Molecule parse_molecule(const std::string& json_text, const std::string& source)
{
    const json j = parse_text(json_text, source);
    if (!j.is_object()) fail(source, "top level must be an object");
    Molecule mol;
    if (!j.contains("name") || !j["name"].is_string()) fail(source + ".name", "string required");
    mol.name = j["name"].get<std::string>();
    if (j.contains("enantiomer")) {
        if (!j["enantiomer"].is_string()) fail(source + ".enantiomer", "string required");
        mol.enantiomer = j["enantiomer"].get<std::string>();
    }
    if (j.contains("experiment")) {
        const auto& e = j["experiment"];
        const std::string w = source + ".experiment";
        if (!e.contains("legendre") || !e["legendre"].is_array() || e["legendre"].size() != 6)
            fail(w + ".legendre", "six normalized coefficients c1..c6 required");
        std::array<double, 6> c{};
        for (int i = 0; i < 6; ++i) c[i] = number(e["legendre"][i], w + ".legendre[" + std::to_string(i) + "]");
        mol.experimental = c;
        if (e.contains("photoelectron_energy_eV"))
            mol.experimental_energy_eV = number(e["photoelectron_energy_eV"], w + ".photoelectron_energy_eV");
    }
    if (!j.contains("states") || !j["states"].is_array() || j["states"].empty())
        fail(source + ".states", "non-empty array required");
    for (std::size_t i = 0; i < j["states"].size(); ++i) {
        const auto& s = j["states"][i];
        const std::string w = source + ".states[" + std::to_string(i) + "]";
        StateRecord rec;
        if (!s.contains("label") || !s["label"].is_string()) fail(w + ".label", "string required");
        rec.label = s["label"].get<std::string>();
        if (s.contains("excitation_energy_eV")) rec.excitation_energy_eV = number(s["excitation_energy_eV"], w + ".excitation_energy_eV");
        if (!s.contains("tensor") || !s["tensor"].is_object()) fail(w + ".tensor", "object required");
        const auto& t = s["tensor"];
        for (const auto& [key, val] : t.items())
            if (key != "left" && key != "right" && key != "effective" && key != "reference_effective")
                fail(w + ".tensor", "unknown field '" + key + "'");
        if (t.contains("left")) rec.left = parse_tensor(t["left"], w + ".tensor.left");
        if (t.contains("right")) rec.right = parse_tensor(t["right"], w + ".tensor.right");
        if (t.contains("effective")) rec.effective = parse_tensor(t["effective"], w + ".tensor.effective");
        if (t.contains("reference_effective"))
            rec.reference_effective = parse_tensor(t["reference_effective"], w + ".tensor.reference_effective");
        if (rec.left.has_value() != rec.right.has_value())
            fail(w + ".tensor", "left and right tensors must be given together");
        if (rec.effective && rec.left) fail(w + ".tensor", "give either left+right or effective, not both");
        if (!rec.effective && !rec.left) fail(w + ".tensor", "no tensor given");
        if (rec.left) {
            try {
                rec.effective = std::nullopt;
                (void)twophoton::effective_tensor(*rec.left, *rec.right);
            } catch (const ValidationError& e) {
                fail(w + ".tensor", e.what());
            }
        }
        if (s.contains("coefficients")) rec.coefficients = parse_coeff_block(s["coefficients"], w + ".coefficients");
        for (const auto& other : mol.states)
            if (other.label == rec.label) fail(w + ".label", "duplicate state label '" + rec.label + "'");
        mol.states.push_back(std::move(rec));
    }
    return mol;
}

Molecule load_molecule(const std::string& path) { return parse_molecule(slurp(path), path); }

pad::ExcitedState parse_coefficients(const std::string& json_text, const std::string& source)
{
    const json j = parse_text(json_text, source);
    return parse_coeff_block(j.contains("coefficients") ? j["coefficients"] : j, source);
}

pad::ExcitedState load_coefficients(const std::string& path) { return parse_coefficients(slurp(path), path); }

std::string data_dir()
{
    if (const char* env = std::getenv("PECD_DATA_DIR")) return env;
    return PECD_DATA_DIR;
}

} // namespace pecd::molecule
