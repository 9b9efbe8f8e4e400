#include "commands.hpp"

#include "pecd/csv.hpp"
#include "pecd/errors.hpp"
#include "pecd/fit.hpp"
#include "pecd/molecule.hpp"
#include "pecd/pad.hpp"
#include "pecd/verify.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>

namespace pecd::cli {

namespace {

struct Options {
    std::string molecule;
    std::string state;
    std::string coeffs;
    int rho1 = 1;
    int rho2 = 1;
    std::optional<double> energy;
    std::optional<double> center;
    std::optional<double> fwhm;
    std::string continuum = "coulomb";
    std::uint64_t seed = 20241016;
    std::string out;

    // compute
    bool pattern_only = false;
    std::optional<int> lmax;
    // scan-energy
    double e_min = 0.36, e_max = 0.75;
    int n_points = 14;
    // fit
    std::string kind = "tensor";
    double fraction = 0.2;
    int budget = 20000;
    std::vector<double> weights;
    std::string trajectory;
    // verify
    int draws = 50;
    int pattern_draws = 10;
    int oracle_draws = 2;
    bool no_oracle = false;
    bool flip_phase = false;
};

radial::ContinuumKind continuum_kind(const std::string& s)
{
    if (s == "coulomb") return radial::ContinuumKind::Coulomb;
    if (s == "plane") return radial::ContinuumKind::PlaneWave;
    throw ValidationError("--continuum must be 'coulomb' or 'plane'");
}

// Writes to --out when given, otherwise to the supplied stream.
void emit(const Options& o, std::ostream& out, const csv::Table& t)
{
    if (o.out.empty()) {
        csv::write(out, t);
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw ValidationError("cannot write " + o.out);
    csv::write(f, t);
}

struct Inputs {
    molecule::Molecule mol;
    const molecule::StateRecord* rec = nullptr;
    twophoton::CartesianTensor tensor;
    std::optional<pad::ExcitedState> state;
};

Inputs load_inputs(const Options& o, bool need_state)
{
    if (o.molecule.empty()) throw ValidationError("--molecule is required");
    if (o.state.empty()) throw ValidationError("--state is required");
    Inputs in;
    in.mol = molecule::load_molecule(o.molecule);
    in.rec = &in.mol.state(o.state);
    in.tensor = in.rec->tensor();
    if (!o.coeffs.empty())
        in.state = molecule::load_coefficients(o.coeffs);
    else if (in.rec->coefficients)
        in.state = *in.rec->coefficients;
    if (need_state && !in.state)
        throw ValidationError("state " + o.state + " has no excited-state coefficients; supply them with --coeffs");
    twophoton::check_polarization(o.rho1, "--rho1");
    twophoton::check_polarization(o.rho2, "--rho2");
    return in;
}

double point_energy(const Options& o, const molecule::Molecule& mol)
{
    if (o.energy) return *o.energy;
    if (mol.experimental_energy_eV) return *mol.experimental_energy_eV;
    throw ValidationError("--energy-ev is required (the molecule file names no photoelectron energy)");
}

pad::LegendreSpectrum spectrum_for(const Options& o, const Inputs& in, std::optional<double> energy_override = {})
{
    const auto kind = continuum_kind(o.continuum);
    const auto T = twophoton::to_spherical(in.tensor);
    if (!energy_override && (o.center || o.fwhm)) {
        if (!o.center || !o.fwhm) throw ValidationError("--energy-center and --fwhm must be given together");
        if (o.energy) throw ValidationError("give either --energy-ev or --energy-center/--fwhm");
        return pad::energy_averaged(*in.state, T, o.rho1, o.rho2, kind, *o.center, *o.fwhm);
    }
    const double E = energy_override ? *energy_override : point_energy(o, in.mol);
    return pad::legendre_coefficients(*in.state, T, o.rho1, o.rho2, {kind, E});
}

int cmd_compute(const Options& o, std::ostream& out)
{
    if (o.pattern_only) {
        auto in = load_inputs(o, false);
        int lmax = o.lmax.value_or(in.state ? in.state->lmax() : -1);
        if (lmax < 0) throw ValidationError("--pattern-only needs --lmax or excited-state coefficients");
        const bool iso = twophoton::decompose(in.tensor).isotropic;
        const auto mask = pad::predicted_pattern(lmax, iso, o.rho1, o.rho2);
        csv::Table t{{"L", "contributes"}, {}, {}};
        for (int L = 0; L <= pad::kLmaxPad; ++L) t.rows.push_back({double(L), mask[L] ? 1.0 : 0.0});
        emit(o, out, t);
        return 0;
    }
    const auto in = load_inputs(o, true);
    const auto sp = spectrum_for(o, in);
    const auto norm = sp.normalized();
    csv::Table t{{"L", "c_L", "c_L/c0"}, {}, {}};
    for (int L = 0; L <= pad::kLmaxPad; ++L) t.rows.push_back({double(L), sp.c[L], norm[L]});
    emit(o, out, t);
    return 0;
}

int cmd_scan(const Options& o, std::ostream& out)
{
    const auto in = load_inputs(o, true);
    if (o.n_points < 1) throw ValidationError("--n-points must be at least 1");
    if (o.e_min < radial::kEnergyFloorEV) throw ValidationError("--e-min lies below the 0.01 eV threshold floor");
    if (o.e_max < o.e_min) throw ValidationError("--e-max must not be smaller than --e-min");
    csv::Table t{{"E_eV", "c1/c0", "c2/c0", "c3/c0", "c4/c0", "c5/c0", "c6/c0"}, {}, {}};
    for (int i = 0; i < o.n_points; ++i) {
        const double E = o.n_points == 1 ? o.e_min : o.e_min + (o.e_max - o.e_min) * i / (o.n_points - 1);
        const auto c = spectrum_for(o, in, E).normalized();
        t.rows.push_back({E, c[1], c[2], c[3], c[4], c[5], c[6]});
    }
    emit(o, out, t);
    return 0;
}

int cmd_tensor_report(const Options& o, std::ostream& out)
{
    if (o.molecule.empty()) throw ValidationError("--molecule is required");
    const auto mol = molecule::load_molecule(o.molecule);
    csv::Table t;
    t.header = {"state",   "deltaF",  "deltaG",  "deltaH",  "dTP_parallel", "dTP_perpendicular", "dTP_circular",
                "K_circular_cm4s", "Tr_left", "Ta_left", "R_left", "Tr_right", "Ta_right", "R_right",
                "eff_xx",  "eff_xy",  "eff_xz",  "eff_yy",  "eff_yz",  "eff_zz"};
    for (const auto& s : mol.states) {
        const auto eff = s.tensor();
        const auto L = s.has_left_right() ? *s.left : eff;
        const auto R = s.has_left_right() ? *s.right : eff;
        const auto d = twophoton::averaged_strengths(L, R);
        const double circ = twophoton::delta_TP(d, -0.25, 3.5, -0.25);
        const double w = s.excitation_energy_eV / 2.0;
        const auto rl = twophoton::rhombicity_axiality(L);
        const auto rr = twophoton::rhombicity_axiality(R);
        const double nan = std::nan("");
        t.labels.push_back(s.label);
        t.rows.push_back({d.deltaF, d.deltaG, d.deltaH, twophoton::delta_TP(d, 2, 2, 2),
                          twophoton::delta_TP(d, -1, 4, -1), circ, w > 0 ? twophoton::rate_K(circ, w, w) : nan,
                          rl.Tr, rl.Ta, rl.R.value_or(nan), rr.Tr, rr.Ta, rr.R.value_or(nan), eff.xx, eff.xy, eff.xz,
                          eff.yy, eff.yz, eff.zz});
    }
    emit(o, out, t);
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    verify::SuiteOptions so;
    so.seed = o.seed;
    so.symmetry_draws = o.draws;
    so.pattern_draws = o.pattern_draws;
    so.oracle_draws = o.oracle_draws;
    so.include_oracle = !o.no_oracle;
    pad::debug::set_phase_flip(o.flip_phase);
    const auto results = verify::run_suite(so);
    pad::debug::set_phase_flip(false);
    int failed = 0;
    for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " | max deviation " << r.max_deviation << " | "
            << r.detail << '\n';
        failed += r.passed ? 0 : 1;
    }
    out << results.size() - failed << " passed, " << failed << " failed\n";
    return failed ? 3 : 0;
}

int cmd_fit(const Options& o, std::ostream& out)
{
    const auto in = load_inputs(o, true);
    if (!in.mol.experimental) throw ValidationError("molecule file has no experimental Legendre coefficients");
    fit::FitProblem p;
    p.targets = *in.mol.experimental;
    if (!o.weights.empty()) {
        if (o.weights.size() != 6) throw ValidationError("--weights takes six values");
        std::copy(o.weights.begin(), o.weights.end(), p.weights.begin());
    }
    if (o.kind == "tensor")
        p.kind = fit::ParameterKind::TensorPerturbation;
    else if (o.kind == "state")
        p.kind = fit::ParameterKind::StateCoeffs;
    else
        throw ValidationError("--kind must be 'tensor' or 'state'");
    p.fraction = o.fraction;
    p.rho1 = o.rho1;
    p.rho2 = o.rho2;
    p.de.budget = o.budget;
    p.de.seed = o.seed;
    const double E = point_energy(o, in.mol);
    const auto r = fit::fit(p, *in.state, in.tensor, {continuum_kind(o.continuum), E});

    if (!o.trajectory.empty()) {
        std::ofstream f(o.trajectory);
        if (!f) throw ValidationError("cannot write " + o.trajectory);
        csv::Table tr{{"generation", "gamma"}, {}, {}};
        for (std::size_t i = 0; i < r.trajectory.size(); ++i) tr.rows.push_back({double(i), r.trajectory[i]});
        csv::write(f, tr);
    }
    const auto c = r.spectrum.normalized();
    csv::Table t{{"L", "c_L/c0", "target"}, {}, {}};
    for (int L = 0; L <= pad::kLmaxPad; ++L) t.rows.push_back({double(L), c[L], L == 0 ? 1.0 : p.targets[L - 1]});
    t.rows.push_back({-1.0, r.gamma, r.gamma0}); // L = -1 row carries (Gamma, Gamma0)
    emit(o, out, t);
    return 0;
}

void add_common(CLI::App* sc, Options& o, bool polarization = true)
{
    sc->add_option("--molecule", o.molecule, "molecule JSON file");
    sc->add_option("--state", o.state, "state label, e.g. C3");
    sc->add_option("--coeffs", o.coeffs, "JSON file with excited-state coefficients");
    if (polarization) {
        sc->add_option("--rho1", o.rho1, "two-photon polarization (-1, 0, 1)");
        sc->add_option("--rho2", o.rho2, "ionization polarization (-1, 0, 1)");
    }
    sc->add_option("--continuum", o.continuum, "coulomb or plane");
    sc->add_option("--out", o.out, "output CSV path (default: stdout)");
}

} // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Legendre coefficients of 2+1 REMPI photoelectron angular distributions"};
    app.require_subcommand(1);
    Options o;

    auto* compute = app.add_subcommand("compute", "Legendre coefficients c0..c6 for one state");
    add_common(compute, o);
    compute->add_option("--energy-ev", o.energy, "photoelectron energy in eV");
    compute->add_option("--energy-center", o.center, "center of a Gaussian energy distribution (eV)");
    compute->add_option("--fwhm", o.fwhm, "FWHM of the energy distribution (eV)");
    compute->add_flag("--pattern-only", o.pattern_only, "print the predicted contribution mask");
    compute->add_option("--lmax", o.lmax, "wave cutoff for --pattern-only (0..3)");

    auto* scan = app.add_subcommand("scan-energy", "normalized c1..c6 over a photoelectron energy range");
    add_common(scan, o);
    scan->add_option("--e-min", o.e_min, "lowest energy (eV)");
    scan->add_option("--e-max", o.e_max, "highest energy (eV)");
    scan->add_option("--n-points", o.n_points, "number of energies");

    auto* report = app.add_subcommand("tensor-report", "two-photon strengths, rhombicity and effective tensors");
    report->add_option("--molecule", o.molecule, "molecule JSON file");
    report->add_option("--out", o.out, "output CSV path (default: stdout)");

    auto* verify = app.add_subcommand("verify", "run the symmetry, pattern and oracle property suite");
    verify->add_option("--seed", o.seed, "random seed");
    verify->add_option("--draws", o.draws, "random draws per symmetry law");
    verify->add_option("--pattern-draws", o.pattern_draws, "random draws per contribution-table cell");
    verify->add_option("--oracle-draws", o.oracle_draws, "random draws for the oracle comparison");
    verify->add_flag("--no-oracle", o.no_oracle, "skip the oracle comparison");
    verify->add_flag("--debug-flip-phase", o.flip_phase, "inject a phase error (mutation check)");

    auto* fitc = app.add_subcommand("fit", "fit tensor elements or state coefficients to experiment");
    add_common(fitc, o);
    fitc->add_option("--energy-ev", o.energy, "photoelectron energy in eV");
    fitc->add_option("--kind", o.kind, "tensor or state");
    fitc->add_option("--fraction", o.fraction, "allowed relative change of tensor elements");
    fitc->add_option("--budget", o.budget, "maximum objective evaluations");
    fitc->add_option("--weights", o.weights, "six optimization weights")->delimiter(',');
    fitc->add_option("--seed", o.seed, "random seed");
    fitc->add_option("--trajectory", o.trajectory, "CSV path for the best-so-far Gamma per generation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (compute->parsed()) return cmd_compute(o, out);
        if (scan->parsed()) return cmd_scan(o, out);
        if (report->parsed()) return cmd_tensor_report(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        if (fitc->parsed()) return cmd_fit(o, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

} // namespace pecd::cli
