#include "qhcompat/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <CLI11.hpp>

#include "qhcompat/compat.hpp"
#include "qhcompat/error.hpp"
#include "qhcompat/fixtures.hpp"
#include "qhcompat/genpair.hpp"
#include "qhcompat/matrix_io.hpp"
#include "qhcompat/oracle.hpp"

namespace qhcompat::cli {
namespace {

using nlohmann::json;

json tolerances_json(const Tolerances& tol) {
    return {{"eig_tol", tol.eig_tol},           {"null_tol", tol.null_tol},
            {"herm_tol", tol.herm_tol},         {"rank_tol", tol.rank_tol},
            {"eig_real_tol", tol.eig_real_tol}, {"degen_tol", tol.degen_tol},
            {"pos_margin", tol.pos_margin},     {"margin_band", tol.margin_band},
            {"pd_tol", tol.pd_tol},             {"witness_tol", tol.witness_tol},
            {"oracle_max_n", tol.oracle_max_n}, {"max_starts", tol.max_starts}};
}

json base_report(const char* command, const Tolerances& tol) {
    return {{"command", command},
            {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
            {"tolerances", tolerances_json(tol)}};
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

int exit_code_for(compat::Status status) {
    switch (status) {
    case compat::Status::Compatible: return kCompatible;
    case compat::Status::Incompatible: return kIncompatible;
    case compat::Status::Borderline: return kBorderline;
    }
    return kError;
}

void add_verdict(json& report, const compat::CompatibilityVerdict& verdict) {
    report["status"] = compat::to_string(verdict.status);
    report["dimension"] = verdict.spectra.front().size();
    report["observables"] = verdict.spectra.size();
    json spectra = json::array();
    for (const auto& sd : verdict.spectra) spectra.push_back(io::to_json(sd.eigenvalues));
    report["eigenvalues"] = std::move(spectra);

    const auto& cert = verdict.certificate;
    report["certificate"] = {{"nullspace_dim", cert.nullspace_dim},
                             {"lp_margin", optional_number(cert.margin)},
                             {"constraint_rows", cert.constraint_rows},
                             {"singular_values", io::to_json(cert.singular_values)}};
    if (verdict.witness) {
        const auto& w = *verdict.witness;
        json ys = json::array();
        for (const auto& y : w.y) ys.push_back(io::to_json(y.values()));
        json qh = json::array();
        for (double r : w.quasi_hermiticity) qh.push_back(r);
        report["witness"] = {{"x", io::to_json(w.x.values())},
                             {"y", std::move(ys)},
                             {"theta", io::to_json(w.theta)},
                             {"metric_mismatch", w.metric_mismatch},
                             {"unitarity_residual", w.unitarity_residual},
                             {"quasi_hermiticity_residuals", std::move(qh)},
                             {"theta_min_eigenvalue", w.theta_min_eigenvalue}};
    } else {
        report["witness"] = nullptr;
    }
}

std::filesystem::path observable_file(const std::filesystem::path& dir, long index) {
    return dir / ("a" + std::to_string(index) + ".json");
}

} // namespace

CommandResult cmd_check(const std::filesystem::path& matrix_path,
                        const std::optional<std::filesystem::path>& theta_path,
                        const Tolerances& tol) {
    const io::MatrixFile input = io::read_matrix_file(matrix_path);
    json report = base_report("check", tol);
    report["dimension"] = input.matrix.rows();

    if (!theta_path) {
        const dyson::SpectralData sd = dyson::analyze(input.matrix, tol);
        const auto candidate =
            dyson::metric(sd, dyson::ScalingVector::uniform(sd.size()), tol);
        const double residual = dyson::quasi_hermiticity_residual(input.matrix, candidate.theta);
        report["eigenvalues"] = io::to_json(sd.eigenvalues);
        report["max_imaginary_part"] = sd.max_imag;
        report["theta"] = io::to_json(candidate.theta);
        report["quasi_hermiticity_residual"] = residual;
        report["theta_min_eigenvalue"] = hermitian_eigenvalues(candidate.theta, tol.herm_tol)(0);
        const bool ok = residual <= tol.witness_tol;
        report["status"] = ok ? "quasi-hermitian" : "not-quasi-hermitian";
        return {ok ? kCompatible : kIncompatible, std::move(report)};
    }

    const io::MatrixFile theta = io::read_matrix_file(*theta_path);
    if (theta.matrix.rows() != input.matrix.rows()) {
        raise(ErrorKind::DimensionMismatch, "observable and metric differ in dimension");
    }
    const double residual = dyson::quasi_hermiticity_residual(input.matrix, theta.matrix);
    const double herm = hermiticity_residual(theta.matrix);
    const bool hermitian = herm <= tol.herm_tol;
    report["quasi_hermiticity_residual"] = residual;
    report["hermiticity_residual"] = herm;
    report["hermitian"] = hermitian;
    bool positive = false;
    if (hermitian) {
        const RealVector lambda = hermitian_eigenvalues(theta.matrix, tol.herm_tol);
        positive = lambda(0) > tol.pd_tol * theta.matrix.norm();
        report["theta_eigenvalues"] = io::to_json(lambda);
    } else {
        report["theta_eigenvalues"] = nullptr;
    }
    report["positive_definite"] = positive;
    const bool ok = hermitian && positive && residual <= tol.witness_tol;
    report["status"] = ok ? "quasi-hermitian" : "not-quasi-hermitian";
    return {ok ? kCompatible : kIncompatible, std::move(report)};
}

CommandResult cmd_compat(const std::vector<std::filesystem::path>& paths, bool with_oracle,
                         const Tolerances& tol) {
    if (paths.size() < 2) raise(ErrorKind::InvalidArgument, "compat needs at least two files");
    std::vector<ComplexMatrix> observables;
    for (const auto& p : paths) observables.push_back(io::read_matrix_file(p).matrix);

    const auto verdict = compat::decide_multi(observables, tol);
    json report = base_report("compat", tol);
    add_verdict(report, verdict);

    if (with_oracle) {
        const Eigen::Index n = observables.front().rows();
        if (n > tol.oracle_max_n) {
            report["oracle"] = {{"skipped", true}, {"reason", "dimension exceeds oracle_max_n"}};
        } else {
            const auto o = oracle::decide_bruteforce(observables, tol);
            const bool agrees = verdict.status == compat::Status::Borderline ||
                                o.compatible == (verdict.status == compat::Status::Compatible);
            report["oracle"] = {{"skipped", false},
                                {"status", o.compatible ? "compatible" : "incompatible"},
                                {"solution_dim", o.solution_dim},
                                {"best_min_eigenvalue", o.best_min_eigenvalue},
                                {"search_caveat", o.search_caveat},
                                {"agrees", agrees}};
        }
    }
    return {exit_code_for(verdict.status), std::move(report)};
}

CommandResult cmd_gen(long n, std::uint64_t seed, const std::filesystem::path& out_dir,
                      const std::optional<std::array<double, 4>>& ansatz, long count,
                      const Tolerances& tol) {
    if (n < 2) raise(ErrorKind::InvalidArgument, "gen needs --n >= 2");
    if (count < 2) raise(ErrorKind::InvalidArgument, "gen needs --count >= 2");
    if (ansatz && count != 2) raise(ErrorKind::InvalidArgument, "--ansatz builds pairs only");

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) raise(ErrorKind::IoError, "cannot create " + out_dir.string() + ": " + ec.message());

    genpair::GenOptions options;
    options.ansatz = ansatz;
    json report = base_report("gen", tol);
    report["n"] = n;
    report["seed"] = seed;
    report["count"] = count;
    json files = json::array();
    json spectra = json::array();
    json scalings = json::array();

    auto emit = [&](long index, const ComplexMatrix& a) {
        const auto path = observable_file(out_dir, index);
        io::write_matrix_file(path, {a, "A" + std::to_string(index)});
        files.push_back(path.filename().string());
    };

    ComplexMatrix theta;
    if (count == 2) {
        const auto pair = genpair::generate(n, seed, options);
        emit(1, pair.a1);
        emit(2, pair.a2);
        theta = pair.theta;
        spectra = {io::to_json(pair.spectrum1), io::to_json(pair.spectrum2)};
        scalings = {io::to_json(RealVector(pair.c1.cwiseAbs2())), io::to_json(RealVector(pair.c2.cwiseAbs2()))};
        report["unitary"] = io::to_json(pair.unitary);
        if (ansatz) report["ansatz"] = {(*ansatz)[0], (*ansatz)[1], (*ansatz)[2], (*ansatz)[3]};
    } else {
        const auto family = genpair::generate_family(n, count, seed, options);
        for (long j = 0; j < count; ++j) {
            emit(j + 1, family.observables[static_cast<std::size_t>(j)]);
            spectra.push_back(io::to_json(family.spectra[static_cast<std::size_t>(j)]));
            scalings.push_back(io::to_json(RealVector(family.scalings[static_cast<std::size_t>(j)].cwiseAbs2())));
        }
        theta = family.theta;
    }
    io::write_matrix_file(out_dir / "theta.json", {theta, "Theta"});
    files.push_back("theta.json");

    report["files"] = std::move(files);
    report["planted"] = {{"spectra", std::move(spectra)},
                         {"scalings_squared", std::move(scalings)},
                         {"theta", io::to_json(theta)}};
    report["status"] = "generated";
    return {kCompatible, std::move(report)};
}

CommandResult cmd_example(double s, double a, const Tolerances& tol) {
    // |s| = 1 and |a| = 1 reach the pipeline, which rejects the collided spectrum.
    if (!(std::abs(s) <= 1.0) || !(std::abs(a) <= 1.0)) {
        raise(ErrorKind::InvalidArgument, "example needs |s| <= 1 and |a| <= 1");
    }
    const ComplexMatrix a1 = fixtures::three_level_first(s);
    const ComplexMatrix a2 = fixtures::three_level_second(a);
    const auto verdict = compat::decide(a1, a2, tol);

    json report = base_report("example", tol);
    report["parameters"] = {{"s", s}, {"a", a}};
    report["inputs"] = {io::to_json(a1), io::to_json(a2)};
    add_verdict(report, verdict);
    const auto complex_space = compat::complex_scaling_space(verdict.mixers.front(), tol);
    report["certificate"]["complex_solution_dim"] = complex_space.x_basis.cols();
    return {exit_code_for(verdict.status), std::move(report)};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shared quasi-Hermitian metric: compatibility checks for non-Hermitian observables"};
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing, "Add elapsed_ms to the report");

    std::string tol_override;
    auto add_tol = [&](CLI::App* sub) {
        sub->add_option("--tol", tol_override, "Tolerance overrides: X or key=value[,key=value]");
    };

    auto* check = app.add_subcommand("check", "Spectrum and default metric of one observable");
    std::string check_path;
    std::string theta_path;
    check->add_option("matrix", check_path, "Observable matrix file")->required();
    check->add_option("--theta", theta_path, "Candidate metric file");
    add_tol(check);

    auto* compat_cmd = app.add_subcommand("compat", "Decide whether observables share a metric");
    std::vector<std::string> compat_paths;
    bool with_oracle = false;
    compat_cmd->add_option("matrices", compat_paths, "Two or more observable files")
        ->required()
        ->expected(2, -1);
    compat_cmd->add_flag("--oracle", with_oracle, "Cross-check with the brute-force decider");
    add_tol(compat_cmd);

    auto* gen = app.add_subcommand("gen", "Generate observables sharing a planted metric");
    long gen_n = 0;
    std::uint64_t gen_seed = 0;
    long gen_count = 2;
    std::string gen_out;
    std::vector<double> gen_ansatz;
    gen->add_option("--n", gen_n, "Dimension")->required();
    gen->add_option("--seed", gen_seed, "Random seed")->required();
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--count", gen_count, "Number of observables (default 2)");
    gen->add_option("--ansatz", gen_ansatz, "alpha,beta,gamma,delta for the 2x2 unitary")
        ->delimiter(',')
        ->expected(4);
    add_tol(gen);

    auto* example = app.add_subcommand("example", "Run the bundled three-level pair");
    double ex_s = 0.5;
    double ex_a = 0.5;
    example->add_option("--s", ex_s, "Parameter of the first observable")->required();
    example->add_option("--a", ex_a, "Parameter of the second observable")->required();
    add_tol(example);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        json report = {{"status", "error"},
                       {"error", {{"kind", "UsageError"}, {"message", e.what()}}}};
        err << report.dump(2) << '\n';
        return kError;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        Tolerances tol = Tolerances::from_environment();
        if (!tol_override.empty()) tol.apply_overrides(tol_override);

        CommandResult result;
        if (check->parsed()) {
            std::optional<std::filesystem::path> theta;
            if (!theta_path.empty()) theta = theta_path;
            result = cmd_check(check_path, theta, tol);
        } else if (compat_cmd->parsed()) {
            std::vector<std::filesystem::path> paths(compat_paths.begin(), compat_paths.end());
            result = cmd_compat(paths, with_oracle, tol);
        } else if (gen->parsed()) {
            std::optional<std::array<double, 4>> ansatz;
            if (!gen_ansatz.empty()) {
                ansatz = std::array<double, 4>{gen_ansatz[0], gen_ansatz[1], gen_ansatz[2],
                                               gen_ansatz[3]};
            }
            result = cmd_gen(gen_n, gen_seed, gen_out, ansatz, gen_count, tol);
        } else {
            result = cmd_example(ex_s, ex_a, tol);
        }
        if (timing) {
            const auto elapsed = std::chrono::steady_clock::now() - started;
            result.report["elapsed_ms"] =
                std::chrono::duration<double, std::milli>(elapsed).count();
        }
        out << result.report.dump(2) << '\n';
        return result.exit_code;
    } catch (const Error& e) {
        json report = {{"status", "error"},
                       {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
        err << report.dump(2) << '\n';
        return kError;
    } catch (const std::exception& e) {
        json report = {{"status", "error"},
                       {"error", {{"kind", "InternalError"}, {"message", e.what()}}}};
        err << report.dump(2) << '\n';
        return kError;
    }
}

} // namespace qhcompat::cli
