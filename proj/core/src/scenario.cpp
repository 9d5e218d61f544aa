#include "nslab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "nslab/assembly.hpp"
#include "nslab/errors.hpp"
#include "nslab/gns.hpp"
#include "nslab/quadform.hpp"
#include "nslab/report.hpp"
#include "nslab/restrict.hpp"
#include "nslab/snapshot.hpp"
#include "nslab/uniqueness.hpp"

namespace nslab {

namespace {

using Json = nlohmann::ordered_json;

BasisSet make_basis(const RunConfig& config)
{
    if (config.plane) {
        return build_restricted_basis(*config.plane, config.resolved_k_max(), config.period);
    }
    return build_basis(config.dim, config.resolved_k_max(), config.period);
}

Grid output_grid(const RunConfig& config, const BasisSet& basis)
{
    return Grid(basis.dimension(), config.n, config.period);
}

class ArtifactWriter {
public:
    explicit ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir))
    {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) {
            throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
        }
    }

    void text(const std::string& name, const std::string& content)
    {
        write_file(dir_ / name, content);
        record(name, content);
    }

    void snapshot(const std::string& name, const PhysicalField& field)
    {
        std::ostringstream buffer(std::ios::binary);
        write_snapshot(buffer, field);
        text(name, buffer.str());
    }

    const std::vector<std::string>& names() const noexcept { return names_; }

    void manifest(const RunConfig& config, int exit_code)
    {
        Json doc;
        doc["scenario"] = to_string(config.scenario);
        doc["config_hash"] = config_hash(config);
        doc["seed"] = config.seed;
        doc["exit_code"] = exit_code;
        auto list = Json::array();
        for (std::size_t i = 0; i < names_.size(); ++i) {
            list.push_back(Json{{"name", names_[i]}, {"bytes", sizes_[i]}, {"fnv1a64", digests_[i]}});
        }
        doc["artifacts"] = list;
        write_file(dir_ / "manifest.json", doc.dump(2) + "\n");
    }

private:
    void record(const std::string& name, const std::string& content)
    {
        names_.push_back(name);
        sizes_.push_back(content.size());
        digests_.push_back(fnv1a64_hex(content));
    }

    std::filesystem::path dir_;
    std::vector<std::string> names_;
    std::vector<std::size_t> sizes_;
    std::vector<std::string> digests_;
};

std::string timeseries_text(const TrajectoryRecord& record)
{
    std::ostringstream out;
    write_timeseries(out, record);
    return out.str();
}

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

Json trajectory_summary(const TrajectoryRecord& record)
{
    Json s;
    s["steps"] = record.times.empty() ? 0 : record.times.size() - 1;
    s["final_time"] = record.times.empty() ? 0.0 : record.times.back();
    s["final_energy"] = record.energy.empty() ? 0.0 : record.energy.back();
    s["max_balance_residual"] = max_abs(record.balance_residual);
    s["max_divergence"] = max_abs(record.div_max);
    s["derivative_l2"] = record.derivative_l2;
    s["cfl_warnings"] = record.cfl_warnings;
    return s;
}

Json base_summary(const RunConfig& config)
{
    Json s;
    s["scenario"] = to_string(config.scenario);
    s["config_hash"] = config_hash(config);
    return s;
}

int run_simulate(const RunConfig& config, ArtifactWriter& out, Json& summary)
{
    const auto basis = make_basis(config);
    const bool dense = config.tensor_dump && basis.size() <= kDenseTrilinearLimit;
    if (config.tensor_dump && !dense) {
        std::cerr << "warning: tensor dump skipped, " << basis.size() << " modes exceed the dense limit of "
                  << kDenseTrilinearLimit << '\n';
    }
    const auto system = assemble_system(basis, dense);
    const auto record = run(make_sim_config(config, basis), system);
    out.text("timeseries.csv", timeseries_text(record));
    out.text("basis.txt", basis_manifest(basis));
    out.snapshot("final.snap", synthesize(record.final_state(), basis, output_grid(config, basis)));
    if (dense) {
        std::ostringstream dump;
        write_trilinear_dump(dump, *system.trilinear);
        out.text("trilinear.txt", dump.str());
    }
    summary["modes"] = basis.size();
    summary["trajectory"] = trajectory_summary(record);
    return kExitOk;
}

int run_certify(const RunConfig& config, ArtifactWriter& out, Json& summary)
{
    if (config.plane) {
        throw InvalidConfig("certify operates on the standard basis; remove the plane setting");
    }
    const auto basis = make_basis(config);
    const auto system = assemble_system(basis);
    auto sim = make_sim_config(config, basis);
    sim.initial *= config.certify_amplitude;
    const auto record = run(sim, system);
    const double c = config.certify_c ? *config.certify_c : estimated_trilinear_constant(config, basis);
    const double lambda1 = config.certify_lambda1.value_or(basis.lambda1());
    const auto certs = criterion_theorem31(record, basis, output_grid(config, basis), c, config.nu, lambda1);
    const bool holds = std::all_of(certs.begin(), certs.end(), [](const auto& q) { return q.holds; });
    out.text("timeseries.csv", timeseries_text(record));
    out.text("certificate.json", certificate_json(certs, config_hash(config), config.certify_c ? "config" : "gns_estimate"));
    summary["c_used"] = c;
    summary["lambda1"] = lambda1;
    summary["holds"] = holds;
    summary["trajectory"] = trajectory_summary(record);
    return holds ? kExitOk : kExitCertificateFails;
}

int run_uniqueness(const RunConfig& config, ArtifactWriter& out, Json& summary)
{
    const auto basis = make_basis(config);
    const auto system = assemble_system(basis);
    const double c = config.uniqueness_c ? *config.uniqueness_c : estimated_trilinear_constant(config, basis);
    auto sim = make_sim_config(config, basis);
    sim.thinning = 1;
    const auto result = perturbation_experiment(sim, system, config.epsilon, config.perturb_mode, c);
    std::ostringstream csv;
    write_gronwall_csv(csv, result.certificate);
    out.text("uniqueness.csv", csv.str());
    out.text("gronwall.json", gronwall_json(result.certificate, config.epsilon, c, config_hash(config)));
    out.text("timeseries.csv", timeseries_text(result.run_a));
    summary["epsilon"] = config.epsilon;
    summary["c_used"] = c;
    summary["C_used"] = result.certificate.C_used;
    summary["max_ratio"] = result.certificate.max_ratio;
    summary["holds"] = result.certificate.holds;
    return result.certificate.holds ? kExitOk : kExitCertificateFails;
}

int run_gns(const RunConfig& config, ArtifactWriter& out, Json& summary)
{
    const int d = config.gns_d.value_or(config.dim);
    const auto params = make_params(d, config.gns_p0, config.gns_p1, config.gns_p2, config.gns_s, config.gns_m,
                                    config.gns_exponent);
    const auto verdict = validate_params(params);
    const auto estimate = estimate_constant(params, Grid(d, config.n, config.period), config.gns_samples, config.seed);
    Json doc;
    doc["config_hash"] = config_hash(config);
    doc["params"] = Json{{"d", params.d},
                         {"p0", std::isinf(params.p0) ? Json("inf") : Json(params.p0)},
                         {"p1", std::isinf(params.p1) ? Json("inf") : Json(params.p1)},
                         {"p2", std::isinf(params.p2) ? Json("inf") : Json(params.p2)},
                         {"s", params.s},
                         {"m", params.m},
                         {"exponent", params.exponent}};
    doc["sigma"] = params.sigma;
    doc["verdict"] = to_string(verdict);
    doc["exclusion_a"] = verdict == GNSVerdict::ExclusionA;
    doc["exclusion_b"] = verdict == GNSVerdict::ExclusionB;
    doc["c_lower"] = estimate.c_lower;
    doc["c_is_lower_bound_estimate"] = true;
    doc["sample_count"] = estimate.sample_count;
    doc["probe_count"] = estimate.probe_count;
    doc["seed"] = estimate.seed;
    out.text("gns.json", doc.dump(2) + "\n");
    summary["sigma"] = params.sigma;
    summary["verdict"] = to_string(verdict);
    summary["c_lower"] = estimate.c_lower;
    return kExitOk;
}

int run_restrict(const RunConfig& config, ArtifactWriter& out, Json& summary)
{
    const Hyperplane& plane = *config.plane;
    PhysicalField u3d = [&] {
        if (!config.restrict_input.empty()) {
            return read_snapshot(std::filesystem::path(config.restrict_input));
        }
        RunConfig standard = config;
        standard.plane.reset();
        const auto basis = make_basis(standard);
        return synthesize(initial_coefficients(standard, basis), basis, Grid(3, config.n, config.period));
    }();
    if (u3d.grid().dimension() != 3 || u3d.component_count() != 3) {
        throw InvalidField("restrict needs a 3D field with 3 components");
    }
    const Grid grid2d(2, u3d.grid().points(), u3d.grid().period());
    const auto problem = restrict_problem(u3d, PhysicalField(u3d.grid(), 3), plane, grid2d);
    out.snapshot("restricted.snap", problem.initial);

    Json report;
    report["config_hash"] = config_hash(config);
    report["plane"] = Json{{"a1", plane.a1}, {"a2", plane.a2}, {"b", plane.b}};
    report["elliptic_params"] = Json{{"c11", problem.elliptic.c11}, {"c22", problem.elliptic.c22}, {"c12", problem.elliptic.c12}};
    report["constraint_residual"] = problem.constraint_residual;
    report["removed_norm"] = problem.removed_norm;
    report["restricted_divergence_after"] = restricted_divergence(problem.initial, plane).max_abs();
    out.text("restrict_report.json", report.dump(2) + "\n");
    summary["constraint_residual"] = problem.constraint_residual;
    summary["removed_norm"] = problem.removed_norm;

    if (config.restrict_simulate) {
        RunConfig restricted = config;
        restricted.n = grid2d.points();
        restricted.period = grid2d.period();
        const auto basis = make_basis(restricted);
        const auto system = assemble_system(basis);
        auto sim = make_sim_config(restricted, basis);
        sim.initial = analyze(resample(problem.initial, basis.quadrature_grid()), basis);
        const auto record = run(sim, system);
        out.text("timeseries.csv", timeseries_text(record));
        summary["trajectory"] = trajectory_summary(record);
    }
    return kExitOk;
}

} // namespace

Eigen::VectorXd initial_coefficients(const RunConfig& config, const BasisSet& basis)
{
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    switch (config.ic.kind) {
    case InitialCondition::Kind::TaylorGreen: {
        const Grid grid = basis.quadrature_grid();
        PhysicalField tg = taylor_green(grid);
        if (basis.components() != tg.component_count()) {
            std::vector<std::vector<double>> comps;
            for (int c = 0; c < basis.components(); ++c) {
                comps.emplace_back(c < tg.component_count() ? std::vector<double>(tg.component(c).begin(), tg.component(c).end())
                                                           : std::vector<double>(grid.size(), 0.0));
            }
            tg = PhysicalField(grid, std::move(comps));
        }
        a = analyze(tg, basis);
        break;
    }
    case InitialCondition::Kind::SingleMode:
        if (config.ic.mode >= basis.size()) {
            throw InvalidConfig("ic single_mode(" + std::to_string(config.ic.mode) + ") outside a basis of " +
                                std::to_string(basis.size()) + " modes");
        }
        a[static_cast<Eigen::Index>(config.ic.mode)] = 1.0;
        break;
    case InitialCondition::Kind::SeededRandom: {
        std::mt19937_64 rng(derive_stream_seed(config.ic_seed(), 0));
        std::normal_distribution<double> normal(0.0, 1.0);
        for (Eigen::Index i = 0; i < n; ++i) {
            a[i] = normal(rng) * std::pow(basis[static_cast<std::size_t>(i)].eigenvalue, -0.5 * config.ic.decay);
        }
        break;
    }
    }
    return config.ic.amplitude * a;
}

Forcing make_forcing(const RunConfig& config, const BasisSet& basis)
{
    if (config.forcing.kind == ForcingSpec::Kind::None) {
        return Forcing::none();
    }
    if (config.forcing.mode >= basis.size()) {
        throw InvalidConfig("forcing mode " + std::to_string(config.forcing.mode) + " outside the basis");
    }
    return Forcing::mode(config.forcing.mode, config.forcing.amplitude, config.forcing.omega);
}

SimConfig make_sim_config(const RunConfig& config, const BasisSet& basis)
{
    SimConfig sim;
    sim.nu = config.nu;
    sim.dt = config.dt;
    sim.t_end = config.t_end;
    sim.initial = initial_coefficients(config, basis);
    sim.forcing = make_forcing(config, basis);
    sim.plane = basis.plane();
    sim.thinning = config.thinning;
    return sim;
}

double estimated_trilinear_constant(const RunConfig& config, const BasisSet& basis)
{
    const int d = basis.dimension();
    const auto estimate = estimate_constant(ladyzhenskaya(d), Grid(d, config.n, config.period), config.gns_samples,
                                            config.seed);
    double factor = 1.0;
    if (basis.plane()) {
        factor += std::max(std::abs(basis.plane()->inv_a1()), std::abs(basis.plane()->inv_a2()));
    }
    return factor * estimate.c_lower;
}

ScenarioResult run_scenario(const RunConfig& config, const std::filesystem::path& out_dir)
{
    ArtifactWriter out(out_dir);
    Json summary = base_summary(config);
    int code = kExitOk;
    switch (config.scenario) {
    case Scenario::Simulate: code = run_simulate(config, out, summary); break;
    case Scenario::Certify: code = run_certify(config, out, summary); break;
    case Scenario::Uniqueness: code = run_uniqueness(config, out, summary); break;
    case Scenario::Gns: code = run_gns(config, out, summary); break;
    case Scenario::Restrict: code = run_restrict(config, out, summary); break;
    }
    summary["exit_code"] = code;
    ScenarioResult result;
    result.exit_code = code;
    result.summary = summary.dump(2) + "\n";
    out.text("summary.json", result.summary);
    out.manifest(config, code);
    result.artifacts = out.names();
    return result;
}

} // namespace nslab
