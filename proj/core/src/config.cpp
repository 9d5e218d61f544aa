#include "nslab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "nslab/errors.hpp"

namespace nslab {

const char* to_string(Scenario s) noexcept
{
    switch (s) {
    case Scenario::Simulate: return "simulate";
    case Scenario::Restrict: return "restrict";
    case Scenario::Certify: return "certify";
    case Scenario::Gns: return "gns";
    case Scenario::Uniqueness: return "uniqueness";
    }
    return "unknown";
}

int RunConfig::resolved_k_max() const noexcept
{
    return k_max > 0 ? k_max : std::max(1, (n - 1) / 3);
}

namespace {

using Reason = ConfigError::Reason;

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

struct Context {
    std::string key;
    std::size_t line = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ConfigError(Reason::TypeError, line, key + ": " + what);
    }

    double real(std::string_view v) const
    {
        if (v == "inf" || v == "infinity") {
            return std::numeric_limits<double>::infinity();
        }
        double out = 0.0;
        const auto* end = v.data() + v.size();
        const auto [ptr, ec] = std::from_chars(v.data(), end, out);
        if (ec != std::errc() || ptr != end || v.empty()) {
            fail("expected a number, got '" + std::string(v) + "'");
        }
        return out;
    }

    double positive(std::string_view v) const
    {
        const double x = real(v);
        if (!(x > 0.0) || !std::isfinite(x)) {
            fail("must be a positive finite number");
        }
        return x;
    }

    std::uint64_t unsigned_integer(std::string_view v) const
    {
        std::uint64_t out = 0;
        const auto* end = v.data() + v.size();
        const auto [ptr, ec] = std::from_chars(v.data(), end, out);
        if (ec != std::errc() || ptr != end || v.empty()) {
            fail("expected a nonnegative integer, got '" + std::string(v) + "'");
        }
        return out;
    }

    int integer(std::string_view v) const
    {
        const auto x = unsigned_integer(v);
        if (x > 1'000'000) {
            fail("integer out of range");
        }
        return static_cast<int>(x);
    }

    bool boolean(std::string_view v) const
    {
        if (v == "true" || v == "1") {
            return true;
        }
        if (v == "false" || v == "0") {
            return false;
        }
        fail("expected true or false");
    }

    /// `name` or `name(arg, ...)`
    std::pair<std::string_view, std::vector<std::string_view>> call(std::string_view v) const
    {
        const auto open = v.find('(');
        if (open == std::string_view::npos) {
            return {v, {}};
        }
        if (v.back() != ')') {
            fail("unbalanced parentheses");
        }
        const auto inner = trim(v.substr(open + 1, v.size() - open - 2));
        return {trim(v.substr(0, open)), inner.empty() ? std::vector<std::string_view>{} : split(inner, ',')};
    }
};

using Handler = std::function<void(RunConfig&, std::string_view, const Context&)>;

const std::map<std::string, Handler, std::less<>>& handlers()
{
    static const std::map<std::string, Handler, std::less<>> table = {
        {"scenario", [](RunConfig& c, std::string_view v, const Context& ctx) {
             static const std::map<std::string_view, Scenario> names = {
                 {"simulate", Scenario::Simulate}, {"restrict", Scenario::Restrict}, {"certify", Scenario::Certify},
                 {"gns", Scenario::Gns}, {"uniqueness", Scenario::Uniqueness}};
             const auto it = names.find(v);
             if (it == names.end()) {
                 ctx.fail("unknown scenario '" + std::string(v) + "'");
             }
             c.scenario = it->second;
         }},
        {"seed", [](RunConfig& c, std::string_view v, const Context& ctx) { c.seed = ctx.unsigned_integer(v); }},
        {"grid.dim", [](RunConfig& c, std::string_view v, const Context& ctx) {
             c.dim = ctx.integer(v);
             if (c.dim != 2 && c.dim != 3) {
                 ctx.fail("must be 2 or 3");
             }
         }},
        {"grid.n", [](RunConfig& c, std::string_view v, const Context& ctx) {
             c.n = ctx.integer(v);
             if (c.n < 4 || c.n % 2 != 0) {
                 ctx.fail("must be an even integer >= 4");
             }
         }},
        {"grid.period", [](RunConfig& c, std::string_view v, const Context& ctx) { c.period = ctx.positive(v); }},
        {"basis.k_max", [](RunConfig& c, std::string_view v, const Context& ctx) {
             c.k_max = ctx.integer(v);
             if (c.k_max < 1) {
                 ctx.fail("must be >= 1");
             }
         }},
        {"sim.nu", [](RunConfig& c, std::string_view v, const Context& ctx) { c.nu = ctx.positive(v); }},
        {"sim.dt", [](RunConfig& c, std::string_view v, const Context& ctx) { c.dt = ctx.positive(v); }},
        {"sim.t_end", [](RunConfig& c, std::string_view v, const Context& ctx) { c.t_end = ctx.positive(v); }},
        {"ic", [](RunConfig& c, std::string_view v, const Context& ctx) {
             const auto [name, args] = ctx.call(v);
             if (name == "taylor_green" && args.empty()) {
                 c.ic.kind = InitialCondition::Kind::TaylorGreen;
             } else if (name == "single_mode" && args.size() == 1) {
                 c.ic.kind = InitialCondition::Kind::SingleMode;
                 c.ic.mode = ctx.unsigned_integer(args[0]);
             } else if (name == "seeded_random" && (args.size() == 1 || args.size() == 2)) {
                 c.ic.kind = InitialCondition::Kind::SeededRandom;
                 if (args.size() == 2) {
                     c.ic.seed = ctx.unsigned_integer(args[0]);
                 }
                 c.ic.decay = ctx.real(args.back());
                 if (!(c.ic.decay >= 0.0) || !std::isfinite(c.ic.decay)) {
                     ctx.fail("spectrum decay must be nonnegative");
                 }
             } else {
                 ctx.fail("expected taylor_green, single_mode(i) or seeded_random([seed,] decay)");
             }
         }},
        {"ic.amplitude", [](RunConfig& c, std::string_view v, const Context& ctx) {
             c.ic.amplitude = ctx.real(v);
             if (!std::isfinite(c.ic.amplitude)) {
                 ctx.fail("must be finite");
             }
         }},
        {"forcing", [](RunConfig& c, std::string_view v, const Context& ctx) {
             const auto [name, args] = ctx.call(v);
             if (name == "none" && args.empty()) {
                 c.forcing = ForcingSpec{};
             } else if (name == "mode" && (args.size() == 2 || args.size() == 3)) {
                 c.forcing.kind = ForcingSpec::Kind::Mode;
                 c.forcing.mode = ctx.unsigned_integer(args[0]);
                 c.forcing.amplitude = ctx.real(args[1]);
                 c.forcing.omega = args.size() == 3 ? ctx.real(args[2]) : 0.0;
                 if (!std::isfinite(c.forcing.amplitude) || !std::isfinite(c.forcing.omega)) {
                     ctx.fail("forcing parameters must be finite");
                 }
             } else {
                 ctx.fail("expected none or mode(i, amplitude[, omega])");
             }
         }},
        {"plane", [](RunConfig& c, std::string_view v, const Context& ctx) {
             const auto parts = split(v, ',');
             std::vector<double> x;
             for (auto p : parts) {
                 x.push_back(ctx.real(p));
             }
             if (x.size() == 3) {
                 c.plane = Hyperplane::normalized(x[0], x[1], x[2]);
             } else if (x.size() == 4) {
                 c.plane = make_hyperplane(x[0], x[1], x[2], x[3]);
             } else {
                 ctx.fail("expected a1,a2,b or a1,a2,a3,b");
             }
         }},
        {"outputs.dir", [](RunConfig& c, std::string_view v, const Context& ctx) {
             if (v.empty()) {
                 ctx.fail("must not be empty");
             }
             c.output_dir = std::string(v);
         }},
        {"outputs.thinning", [](RunConfig& c, std::string_view v, const Context& ctx) {
             c.thinning = ctx.unsigned_integer(v);
             if (c.thinning == 0) {
                 ctx.fail("must be >= 1");
             }
         }},
        {"outputs.tensor_dump", [](RunConfig& c, std::string_view v, const Context& ctx) { c.tensor_dump = ctx.boolean(v); }},
        {"certify.c", [](RunConfig& c, std::string_view v, const Context& ctx) { c.certify_c = ctx.positive(v); }},
        {"certify.amplitude", [](RunConfig& c, std::string_view v, const Context& ctx) {
             c.certify_amplitude = ctx.real(v);
             if (!std::isfinite(c.certify_amplitude)) {
                 ctx.fail("must be finite");
             }
         }},
        {"certify.lambda1", [](RunConfig& c, std::string_view v, const Context& ctx) { c.certify_lambda1 = ctx.positive(v); }},
        {"gns.d", [](RunConfig& c, std::string_view v, const Context& ctx) {
             c.gns_d = ctx.integer(v);
             if (*c.gns_d != 2 && *c.gns_d != 3) {
                 ctx.fail("must be 2 or 3");
             }
         }},
        {"gns.p0", [](RunConfig& c, std::string_view v, const Context& ctx) { c.gns_p0 = ctx.real(v); }},
        {"gns.p1", [](RunConfig& c, std::string_view v, const Context& ctx) { c.gns_p1 = ctx.real(v); }},
        {"gns.p2", [](RunConfig& c, std::string_view v, const Context& ctx) { c.gns_p2 = ctx.real(v); }},
        {"gns.s", [](RunConfig& c, std::string_view v, const Context& ctx) { c.gns_s = ctx.integer(v); }},
        {"gns.m", [](RunConfig& c, std::string_view v, const Context& ctx) { c.gns_m = ctx.integer(v); }},
        {"gns.exponent", [](RunConfig& c, std::string_view v, const Context& ctx) { c.gns_exponent = ctx.positive(v); }},
        {"gns.samples", [](RunConfig& c, std::string_view v, const Context& ctx) {
             c.gns_samples = ctx.unsigned_integer(v);
             if (c.gns_samples == 0) {
                 ctx.fail("must be >= 1");
             }
         }},
        {"uniqueness.epsilon", [](RunConfig& c, std::string_view v, const Context& ctx) {
             c.epsilon = ctx.real(v);
             if (!(c.epsilon >= 0.0) || !std::isfinite(c.epsilon)) {
                 ctx.fail("must be a nonnegative finite number");
             }
         }},
        {"uniqueness.mode", [](RunConfig& c, std::string_view v, const Context& ctx) { c.perturb_mode = ctx.unsigned_integer(v); }},
        {"uniqueness.c", [](RunConfig& c, std::string_view v, const Context& ctx) { c.uniqueness_c = ctx.positive(v); }},
        {"restrict.input", [](RunConfig& c, std::string_view v, const Context&) { c.restrict_input = std::string(v); }},
        {"restrict.simulate", [](RunConfig& c, std::string_view v, const Context& ctx) { c.restrict_simulate = ctx.boolean(v); }},
    };
    return table;
}

std::vector<std::string> required_keys(Scenario s)
{
    switch (s) {
    case Scenario::Simulate:
    case Scenario::Uniqueness:
        return {"grid.n", "sim.nu", "sim.dt", "sim.t_end"};
    case Scenario::Certify:
        return {"grid.n", "sim.nu"};
    case Scenario::Restrict:
        return {"plane"};
    case Scenario::Gns:
        return {};
    }
    return {};
}

std::string format_real(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

RunConfig parse_config(std::string_view text)
{
    RunConfig config;
    std::map<std::string, std::size_t, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t last_line = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        last_line = line_no;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(Reason::TypeError, line_no, "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));
        const auto it = handlers().find(key);
        if (it == handlers().end()) {
            throw ConfigError(Reason::UnknownKey, line_no, "unknown key '" + key + "'");
        }
        if (seen.count(key) != 0) {
            throw ConfigError(Reason::TypeError, line_no, "duplicate key '" + key + "'");
        }
        seen.emplace(key, line_no);
        it->second(config, value, Context{key, line_no});
    }

    if (seen.count("scenario") == 0) {
        throw ConfigError(Reason::MissingRequired, last_line, "missing required key 'scenario'");
    }
    for (const auto& key : required_keys(config.scenario)) {
        if (seen.count(key) == 0) {
            throw ConfigError(Reason::MissingRequired, last_line,
                              "missing required key '" + key + "' for scenario " + to_string(config.scenario));
        }
    }
    if (config.dt > config.t_end) {
        const auto where = seen.count("sim.dt") != 0 ? seen.at("sim.dt") : last_line;
        throw ConfigError(Reason::TypeError, where, "sim.dt: must not exceed sim.t_end");
    }
    if (config.k_max > 0 && 2 * config.k_max + 2 > config.n) {
        throw ConfigError(Reason::TypeError, seen.at("basis.k_max"), "basis.k_max: grid.n must be at least 2*k_max + 2");
    }
    if (config.scenario == Scenario::Restrict && config.restrict_input.empty() && config.dim != 3) {
        throw ConfigError(Reason::TypeError, seen.count("grid.dim") != 0 ? seen.at("grid.dim") : last_line,
                          "grid.dim: restrict without restrict.input generates a 3D field and needs grid.dim = 3");
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string canonical_text(const RunConfig& c)
{
    std::ostringstream out;
    out << "scenario = " << to_string(c.scenario) << '\n'
        << "seed = " << c.seed << '\n'
        << "grid.dim = " << c.dim << '\n'
        << "grid.n = " << c.n << '\n'
        << "grid.period = " << format_real(c.period) << '\n'
        << "basis.k_max = " << c.resolved_k_max() << '\n'
        << "sim.nu = " << format_real(c.nu) << '\n'
        << "sim.dt = " << format_real(c.dt) << '\n'
        << "sim.t_end = " << format_real(c.t_end) << '\n';
    out << "ic = ";
    switch (c.ic.kind) {
    case InitialCondition::Kind::TaylorGreen: out << "taylor_green"; break;
    case InitialCondition::Kind::SingleMode: out << "single_mode(" << c.ic.mode << ")"; break;
    case InitialCondition::Kind::SeededRandom:
        out << "seeded_random(" << c.ic_seed() << ", " << format_real(c.ic.decay) << ")";
        break;
    }
    out << "\nic.amplitude = " << format_real(c.ic.amplitude) << '\n';
    if (c.forcing.kind == ForcingSpec::Kind::None) {
        out << "forcing = none\n";
    } else {
        out << "forcing = mode(" << c.forcing.mode << ", " << format_real(c.forcing.amplitude) << ", "
            << format_real(c.forcing.omega) << ")\n";
    }
    if (c.plane) {
        out << "plane = " << format_real(c.plane->a1) << ", " << format_real(c.plane->a2) << ", "
            << format_real(c.plane->b) << '\n';
    }
    out << "outputs.thinning = " << c.thinning << '\n'
        << "outputs.tensor_dump = " << (c.tensor_dump ? "true" : "false") << '\n';
    if (c.certify_c) {
        out << "certify.c = " << format_real(*c.certify_c) << '\n';
    }
    out << "certify.amplitude = " << format_real(c.certify_amplitude) << '\n';
    if (c.certify_lambda1) {
        out << "certify.lambda1 = " << format_real(*c.certify_lambda1) << '\n';
    }
    out << "gns.d = " << c.gns_d.value_or(c.dim) << '\n'
        << "gns.p0 = " << format_real(c.gns_p0) << '\n'
        << "gns.p1 = " << format_real(c.gns_p1) << '\n'
        << "gns.p2 = " << format_real(c.gns_p2) << '\n'
        << "gns.s = " << c.gns_s << '\n'
        << "gns.m = " << c.gns_m << '\n'
        << "gns.exponent = " << format_real(c.gns_exponent) << '\n'
        << "gns.samples = " << c.gns_samples << '\n'
        << "uniqueness.epsilon = " << format_real(c.epsilon) << '\n'
        << "uniqueness.mode = " << c.perturb_mode << '\n';
    if (c.uniqueness_c) {
        out << "uniqueness.c = " << format_real(*c.uniqueness_c) << '\n';
    }
    if (!c.restrict_input.empty()) {
        out << "restrict.input = " << c.restrict_input << '\n';
    }
    out << "restrict.simulate = " << (c.restrict_simulate ? "true" : "false") << '\n';
    return out.str();
}

} // namespace nslab
