#include "rotalg/cli.hpp"

#include "rotalg/averaging.hpp"
#include "rotalg/errors.hpp"
#include "rotalg/io.hpp"
#include "rotalg/module_action.hpp"
#include "rotalg/representation.hpp"
#include "rotalg/rng.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

namespace rotalg {

namespace {

struct RunConfig {
    double theta = 0.0;  // 0 means "use the golden rotation with its convergents"
    double sigma = std::exp(1.0);
    std::int64_t grid = 0;  // 0 picks per-function grids
    std::vector<int> section_sizes{16, 32, 64};
    std::vector<double> base_points;  // empty: 0 plus five seeded samples
    double tol = 1e-9;
    double epsilon = 1e-3;
    double lambda = 2.0;
    int N = 30;
    std::uint64_t seed = 12345;
    std::string out_dir = ".";
};

RotationParameter make_rotation(const RunConfig& cfg) {
    if (cfg.theta == 0.0) return RotationParameter::golden();
    return RotationParameter(cfg.theta, true,
                             continued_fraction_convergents(cfg.theta, 1000000));
}

std::vector<double> resolve_base_points(const RunConfig& cfg) {
    if (!cfg.base_points.empty()) return cfg.base_points;
    std::vector<double> out{0.0};
    Rng rng(cfg.seed);
    for (int i = 0; i < 5; ++i) out.push_back(rng.next_unit());
    return out;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_report(const RunConfig& cfg, const std::string& name, const io::Json& j) {
    const auto path = std::filesystem::path(cfg.out_dir) / name;
    std::filesystem::create_directories(path.parent_path());
    io::write_text_file(path.string(), io::canonical_dump(j));
    std::cout << "wrote " << path.string() << "\n";
}

void write_csv(const RunConfig& cfg, const std::string& name, const std::string& content) {
    const auto path = std::filesystem::path(cfg.out_dir) / name;
    std::filesystem::create_directories(path.parent_path());
    io::write_text_file(path.string(), content);
    std::cout << "wrote " << path.string() << "\n";
}

io::Json interval_json(const Interval& iv) {
    io::Json j;
    j["lower"] = iv.lower;
    j["upper"] = iv.upper;
    return j;
}

int cmd_norms(const RunConfig& cfg, const std::string& file) {
    const AlgebraElement f = io::element_from_file(file);
    const Interval na = f.norm_a(cfg.grid);
    const Interval nl1 = f.norm_l1(cfg.grid);

    std::vector<int> sizes;
    for (const int L : cfg.section_sizes) {
        if (L >= f.width()) sizes.push_back(L);
    }
    if (sizes.empty()) sizes.push_back(f.width() + 8);
    const std::vector<double> z0s = resolve_base_points(cfg);
    const Interval op = opnorm_estimate(f, sizes, z0s);

    io::Json rep;
    rep["command"] = "norms";
    rep["input"] = file;
    rep["theta"] = f.rotation().value();
    rep["sigma"] = f.weight().sigma();
    rep["norm_a"] = interval_json(na);
    rep["norm_l1"] = interval_json(nl1);
    rep["opnorm"] = interval_json(op);
    rep["section_sizes"] = sizes;
    rep["base_points"] = z0s;
    rep["seed"] = cfg.seed;
    write_report(cfg, "norms_report.json", rep);

    std::cout << "weighted norm in [" << format_double(na.lower) << ", "
              << format_double(na.upper) << "]\n"
              << "coefficient l1 norm in [" << format_double(nl1.lower) << ", "
              << format_double(nl1.upper) << "]\n"
              << "operator norm estimate in [" << format_double(op.lower) << ", "
              << format_double(op.upper) << "]\n";
    return 0;
}

int cmd_simplicity(const RunConfig& cfg, const std::string& file) {
    const AlgebraElement f = io::element_from_file(file);
    const double eps = cfg.epsilon;
    if (!(eps > 0.0)) throw DomainError("simplicity: epsilon must be positive");

    int N = 0;
    double tail = 0.0;
    for (;; ++N) {
        tail = f.truncate_support(N).second;
        if (tail < eps || N > f.width()) break;
    }
    double mid_upper = 0.0;
    for (const auto& [n, fn] : f.terms()) {
        if (n != 0 && std::abs(n) <= N) mid_upper += f.weight().omega(n) * fn.sup_norm().upper;
    }
    // Split the 2 eps budget: the tail eats part of it, the damped middle
    // modes must fit in half of what is left.
    const double budget = 2.0 * eps - tail;
    double target = 0.5 * budget / std::max(mid_upper, 1e-12);
    target = std::min(std::max(target, 1e-12), 0.49);

    const AveragingPlan plan = plan_average(N, target, f.rotation());
    const AverageResult res = average_toward_p(f, plan);
    const AlgebraElement projected =
        AlgebraElement::embed(f.project_zero(), f.rotation(), f.weight());
    const double measured = (res.average - projected).norm_a().upper;
    const bool pass = measured < 2.0 * eps;

    io::Json rep;
    rep["command"] = "simplicity";
    rep["input"] = file;
    rep["theta"] = f.rotation().value();
    rep["sigma"] = f.weight().sigma();
    rep["epsilon"] = eps;
    rep["N"] = plan.N;
    rep["M"] = plan.M;
    rep["q"] = plan.q;
    rep["predicted_error"] = plan.predicted_error;
    rep["tail_bound"] = res.tail_bound;
    rep["error_bound"] = res.error_bound;
    rep["measured_deviation"] = measured;
    rep["threshold"] = 2.0 * eps;
    rep["pass"] = pass;
    write_report(cfg, "simplicity_report.json", rep);

    std::cout << "averaging plan: N = " << plan.N << ", M = " << plan.M << ", q = " << plan.q
              << ", predicted damping " << format_double(plan.predicted_error) << "\n"
              << "certified error bound " << format_double(res.error_bound) << "\n"
              << "measured deviation from the zero mode " << format_double(measured) << " (< "
              << format_double(2.0 * eps) << ": " << (pass ? "yes" : "NO") << ")\n";
    return pass ? 0 : 1;
}

int cmd_module(const RunConfig& cfg, const std::string& file) {
    const TorusFunction phi_fn = io::torus_from_file(file);
    const RotationParameter rotation = make_rotation(cfg);
    const Weight weight(cfg.sigma);
    const ModuleVector phi(phi_fn);

    const CyclicSolution sol = cyclic_solver(phi, cfg.tol, rotation, weight);
    const NonunitarizabilityReport stretch = nonunitarizability_report(8, rotation, weight);

    io::Json rep;
    rep["command"] = "module";
    rep["input"] = file;
    rep["theta"] = rotation.value();
    rep["sigma"] = weight.sigma();
    rep["tol"] = cfg.tol;
    rep["translates"] = sol.translates;
    rep["chi_lower_bound"] = sol.chi_lower;
    rep["residual"] = sol.residual;
    rep["solver_norm_bound"] = action_bound(sol.element);
    rep["unitary_stretch"] = stretch.norms;
    rep["stretch_ratios"] = stretch.ratios;
    write_report(cfg, "module_report.json", rep);
    write_report(cfg, "solver_element.json", io::to_json(sol.element));

    std::cout << "covering translates:";
    for (const int n : sol.translates) std::cout << ' ' << n;
    std::cout << "\ncertified residual " << format_double(sol.residual) << " (tol "
              << format_double(cfg.tol) << ")\n";
    return 0;
}

int cmd_witness(const RunConfig& cfg) {
    const RotationParameter rotation = make_rotation(cfg);
    const Weight weight(cfg.sigma);
    const Complex lambda(cfg.lambda, 0.0);
    const int L = cfg.section_sizes.empty() ? 64 : cfg.section_sizes.back();
    const WitnessReport rep = nonspectrality_witness(lambda, cfg.N, L, rotation, weight);

    io::Json j;
    j["command"] = "witness";
    j["theta"] = rotation.value();
    j["sigma"] = weight.sigma();
    j["lambda_re"] = rep.lambda.real();
    j["lambda_im"] = rep.lambda.imag();
    j["N"] = rep.N;
    j["L"] = rep.L;
    j["smallest_singular_value"] = rep.smallest_singular_value;
    j["singular_lower_bound"] = rep.singular_lower_bound;
    j["invertibility_ok"] = rep.invertibility_ok;
    j["inverse_diagonal_max_dev"] = rep.inverse_diagonal_max_dev;
    j["inverse_diagonal_depth"] = rep.inverse_diagonal_depth;
    j["inverse_coefficients_ok"] = rep.inverse_coefficients_ok;
    j["partial_sum_lower_bounds"] = rep.partial_sum_lower_bounds;
    j["ratio_sequence"] = rep.ratio_sequence;
    j["ratio_limit"] = rep.ratio_limit;
    j["divergence_ok"] = rep.divergence_ok;
    j["verdict"] = rep.verdict;
    j["note"] = rep.note;
    write_report(cfg, "witness_report.json", j);

    std::string csv = "N,lower_bound,ratio\n";
    for (std::size_t n = 0; n < rep.partial_sum_lower_bounds.size(); ++n) {
        csv += std::to_string(n);
        csv += ',';
        csv += format_double(rep.partial_sum_lower_bounds[n]);
        csv += ',';
        csv += (n == 0) ? "" : format_double(rep.ratio_sequence[n - 1]);
        csv += '\n';
    }
    write_csv(cfg, "witness_ratios.csv", csv);

    std::cout << "smallest singular value " << format_double(rep.smallest_singular_value)
              << " (bound " << format_double(rep.singular_lower_bound) << ")\n"
              << "inverse diagonal deviation " << format_double(rep.inverse_diagonal_max_dev)
              << " down to depth " << rep.inverse_diagonal_depth << "\n"
              << "partial sum ratio " << format_double(rep.ratio_sequence.back())
              << " vs limit " << format_double(rep.ratio_limit) << "\n"
              << "verdict: " << rep.verdict << "\n";
    const bool all = rep.invertibility_ok && rep.inverse_coefficients_ok && rep.divergence_ok;
    return all ? 0 : 1;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& file,
                 std::optional<double> mathieu_coupling) {
    const RotationParameter rotation = make_rotation(cfg);
    const Weight weight(cfg.sigma);

    AlgebraElement h(rotation, weight);
    double lambda_param = 0.0;
    std::string source;
    if (mathieu_coupling) {
        // Discrete magnetic-translation Hamiltonian: shifts plus a cosine
        // potential of strength 2 lambda.
        lambda_param = *mathieu_coupling;
        source = "almost-mathieu";
        h = AlgebraElement::unit(rotation, weight, 1) +
            AlgebraElement::unit(rotation, weight, -1);
        TorusFunction::CoeffMap pot;
        pot[-1] = Complex(lambda_param, 0.0);
        pot[1] = Complex(lambda_param, 0.0);
        h.add_term(0, TorusFunction::from_coeffs(std::move(pot)));
    } else {
        if (file.empty()) {
            throw DomainError("spectrum: provide an element file or --almost-mathieu");
        }
        h = io::element_from_file(file);
        source = file;
    }

    const std::vector<double> z0s = resolve_base_points(cfg);
    std::vector<int> sizes;
    for (const int L : cfg.section_sizes) {
        if (L >= h.width()) sizes.push_back(L);
    }
    if (sizes.empty()) sizes.push_back(h.width() + 8);

    io::Json sweeps = io::Json::array();
    std::string csv = "theta,lambda_param,L,z0,eigenvalue_index,eigenvalue\n";
    for (const int L : sizes) {
        for (const double z0 : z0s) {
            const EigRecord rec = eig_report(h, L, z0);
            io::Json one;
            one["L"] = rec.L;
            one["z0"] = rec.z0;
            one["eigenvalues"] = rec.eigenvalues;
            one["interior_mass"] = rec.interior_mass;
            sweeps.push_back(std::move(one));
            for (std::size_t i = 0; i < rec.eigenvalues.size(); ++i) {
                csv += format_double(rotation.value());
                csv += ',';
                csv += format_double(lambda_param);
                csv += ',';
                csv += std::to_string(L);
                csv += ',';
                csv += format_double(z0);
                csv += ',';
                csv += std::to_string(i);
                csv += ',';
                csv += format_double(rec.eigenvalues[i]);
                csv += '\n';
            }
        }
    }

    io::Json rep;
    rep["command"] = "spectrum";
    rep["input"] = source;
    rep["theta"] = rotation.value();
    rep["sigma"] = weight.sigma();
    rep["lambda_param"] = lambda_param;
    rep["section_sizes"] = sizes;
    rep["base_points"] = z0s;
    rep["seed"] = cfg.seed;
    rep["sweeps"] = std::move(sweeps);
    write_report(cfg, "spectrum_report.json", rep);
    write_csv(cfg, "spectrum.csv", csv);

    std::cout << "computed " << sizes.size() * z0s.size() << " spectral sweeps\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"numerics for a weighted rotation crossed product"};
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--theta", cfg.theta,
                   "rotation angle in (0, 1); omit for the golden rotation")
        ->configurable(true);
    app.add_option("--sigma", cfg.sigma, "weight base, >= 1")->configurable(true);
    app.add_option("--grid", cfg.grid, "evaluation grid size (0: automatic)")
        ->configurable(true);
    app.add_option("--L", cfg.section_sizes, "finite section half-widths")
        ->configurable(true);
    app.add_option("--z0", cfg.base_points, "orbit base points in [0, 1)")
        ->configurable(true);
    app.add_option("--tol", cfg.tol, "certification tolerance")->configurable(true);
    app.add_option("--epsilon", cfg.epsilon, "averaging accuracy target")
        ->configurable(true);
    app.add_option("--lambda", cfg.lambda, "witness parameter, 1 < lambda < sigma")
        ->configurable(true);
    app.add_option("--N", cfg.N, "truncation or partial-sum order")->configurable(true);
    app.add_option("--seed", cfg.seed, "seed for sampled base points")->configurable(true);
    app.add_option("--out", cfg.out_dir, "output directory for reports")
        ->configurable(true);
    app.set_config("--config", "", "flat key=value configuration file");

    std::string norms_file, simplicity_file, module_file, spectrum_file;
    std::optional<double> mathieu;

    CLI::App* norms = app.add_subcommand("norms", "norm brackets of an element");
    norms->add_option("file", norms_file, "element JSON")->required();

    CLI::App* simplicity =
        app.add_subcommand("simplicity", "averaging approximation of the zero-mode projection");
    simplicity->add_option("file", simplicity_file, "element JSON")->required();

    CLI::App* module =
        app.add_subcommand("module", "cyclic vector solve and unitary stretch table");
    module->add_option("file", module_file, "torus function JSON")->required();

    CLI::App* witness =
        app.add_subcommand("witness", "invertibility and divergence evidence for u_1 - lambda");

    CLI::App* spectrum = app.add_subcommand("spectrum", "finite section eigenvalue sweeps");
    spectrum->add_option("file", spectrum_file, "element JSON (self-adjoint)");
    double mathieu_value = 0.0;
    CLI::Option* mathieu_opt = spectrum->add_option(
        "--almost-mathieu", mathieu_value, "build the cosine-potential demo at this coupling");

    app.require_subcommand(1);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (mathieu_opt->count() > 0) mathieu = mathieu_value;
        if (norms->parsed()) return cmd_norms(cfg, norms_file);
        if (simplicity->parsed()) return cmd_simplicity(cfg, simplicity_file);
        if (module->parsed()) return cmd_module(cfg, module_file);
        if (witness->parsed()) return cmd_witness(cfg);
        if (spectrum->parsed()) return cmd_spectrum(cfg, spectrum_file, mathieu);
        return 2;
    } catch (const PlanError& e) {
        std::cerr << "plan error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace rotalg
