#include "levyx_cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "levyx/error.hpp"
#include "levyx/expression.hpp"

namespace levyx::cli {

namespace {

const std::vector<std::string> kKeys = {
    "model.preset", "model.x0", "model.randomize",
    "model.a", "model.gamma", "model.jump.multiplier", "model.jump.measure",
    "model.jump.lambda", "model.jump.m", "model.jump.eta",
    "model.jump.theta", "model.jump.rho", "model.jump.kappa",
    "model.jump.density", "model.jump.lo", "model.jump.hi", "model.jump.strip_lo", "model.jump.strip_hi",
    "model.delta", "model.beta", "model.lambda", "model.m", "model.eta",
    "model.theta", "model.rho", "model.kappa",
    "model.domain.t_lo", "model.domain.t_hi", "model.domain.x_lo", "model.domain.x_hi",
    "basis.family", "basis.xbar", "basis.delta", "basis.x1", "basis.x2", "basis.shift",
    "basis.quad_order", "basis.finite_differences",
    "numerics.order", "numerics.payoff", "numerics.t0", "numerics.T", "numerics.k", "numerics.y",
    "numerics.engine", "numerics.contour", "numerics.R", "numerics.R_cap", "numerics.panel_width",
    "numerics.panel_points", "numerics.tail_tol", "numerics.imag_tol", "numerics.time_quad_order",
    "numerics.implied_vol", "numerics.default_payment",
    "numerics.bound_M", "numerics.bound_C", "numerics.bound_x_lo", "numerics.bound_x_hi",
    "mc.scheme", "mc.paths", "mc.dt", "mc.seed", "mc.antithetic", "mc.threads", "mc.absorb_below",
};

const std::vector<std::string> kPresetParams = {"delta", "beta", "lambda", "m", "eta", "theta", "rho", "kappa"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
    return out;
}

CoefficientField field(const Settings& s, const std::string& key, const std::string& fallback) {
    const std::string text = s.text(key, fallback);
    try {
        return CoefficientField::from_expression(text);
    } catch (const Error& e) {
        fail(ErrorKind::Config, key + ": " + e.what());
    }
}

LevyMeasure measure(const Settings& s) {
    const std::string kind = s.text("model.jump.measure", "none");
    if (kind == "none") return LevyMeasure();
    if (kind == "gaussian")
        return LevyMeasure::gaussian(s.number("model.jump.lambda", 0.0), s.number("model.jump.m", 0.0),
                                     s.number("model.jump.eta", 1.0));
    if (kind == "vg")
        return LevyMeasure::variance_gamma(s.number("model.jump.theta", 0.0), s.number("model.jump.rho", 0.0),
                                           s.number("model.jump.kappa", 1.0));
    if (kind == "numeric") {
        const auto text = s.get("model.jump.density");
        require(text.has_value(), ErrorKind::Config, "model.jump.density is required for a numeric measure");
        auto expr = std::make_shared<Expression>(Expression::parse(*text, {"z"}));
        const double inf = std::numeric_limits<double>::infinity();
        Strip strip{s.number("model.jump.strip_lo", -inf), s.number("model.jump.strip_hi", inf)};
        return LevyMeasure::numeric([expr](double z) { return expr->eval({z}); },
                                    s.number("model.jump.lo", -inf), s.number("model.jump.hi", inf), strip);
    }
    fail(ErrorKind::Config, "model.jump.measure: unknown measure '" + kind + "' (expected none, gaussian, vg or numeric)");
}

}  // namespace

const std::vector<std::string>& known_keys() { return kKeys; }

double parse_number(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    require(end != begin && end && *end == '\0' && errno != ERANGE, ErrorKind::Config,
            key + ": '" + text + "' is not a number");
    return v;
}

std::vector<double> parse_numbers(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(' '));
        if (!item.empty()) out.push_back(parse_number(key, item));
    }
    return out;
}

Settings Settings::from_file(const std::string& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        fail(ErrorKind::Config, std::string("config file: ") + e.what());
    }
    Settings s;
    for (const auto& [section, body] : tree) {
        require(!body.empty() || body.data().empty(), ErrorKind::Config,
                "config file: key '" + section + "' lies outside any section");
        for (const auto& [key, value] : body) s.set(section + "." + key, value.data());
    }
    return s;
}

void Settings::set(const std::string& key, const std::string& value) {
    require(std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end(), ErrorKind::Config,
            "unknown setting '" + key + "'");
    values_[key] = value;
}

std::optional<std::string> Settings::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

bool Settings::has_model_keys() const {
    for (const auto& [k, v] : values_) {
        if (k.rfind("model.", 0) != 0 || k == "model.x0" || k == "model.preset" || k == "model.randomize") continue;
        if (k.rfind("model.domain.", 0) == 0) continue;
        const std::string tail = k.substr(6);
        if (std::find(kPresetParams.begin(), kPresetParams.end(), tail) != kPresetParams.end()) continue;
        return true;
    }
    return false;
}

double Settings::number(const std::string& key, double fallback) const {
    const auto v = get(key);
    return v ? parse_number(key, *v) : fallback;
}

int Settings::integer(const std::string& key, int fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    const double d = parse_number(key, *v);
    require(d == std::floor(d) && std::abs(d) < 2e9, ErrorKind::Config, key + ": '" + *v + "' is not an integer");
    return static_cast<int>(d);
}

bool Settings::boolean(const std::string& key, bool fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    fail(ErrorKind::Config, key + ": '" + *v + "' is not a boolean");
}

std::string Settings::text(const std::string& key, const std::string& fallback) const {
    const auto v = get(key);
    return v ? *v : fallback;
}

std::vector<double> Settings::numbers(const std::string& key) const {
    const auto v = get(key);
    return v ? parse_numbers(key, *v) : std::vector<double>{};
}

ModelChoice resolve_model(const Settings& s) {
    ModelChoice out;
    const auto preset = s.get("model.preset");
    const bool explicit_model = s.has_model_keys();
    const bool randomized = s.has("model.randomize");
    require(!(preset && explicit_model), ErrorKind::Config,
            "two model sources: model.preset and explicit model keys");
    require(preset || explicit_model || randomized, ErrorKind::Config,
            "no model source: give a preset or the model keys (a, gamma, jump.*)");

    if (randomized) {
        require(!explicit_model && (!preset || *preset == "cev-gauss"), ErrorKind::Config,
                "model.randomize draws cev-gauss parameters and excludes other model sources");
        const double seed = s.number("model.randomize", 0.0);
        require(seed >= 0.0, ErrorKind::Config, "model.randomize: seed must be nonnegative");
        const CevGaussParams p = randomize_cev_gauss(static_cast<std::uint64_t>(seed));
        out.model = cev_gauss_model(p);
        out.params = {{"delta", p.delta}, {"beta", p.beta}, {"lambda", p.lambda}, {"m", p.m}, {"eta", p.eta}};
        out.source = "cev-gauss(random)";
    } else if (preset) {
        if (*preset == "cev-gauss") {
            CevGaussParams p;
            p.delta = s.number("model.delta", p.delta);
            p.beta = s.number("model.beta", p.beta);
            p.lambda = s.number("model.lambda", p.lambda);
            p.m = s.number("model.m", p.m);
            p.eta = s.number("model.eta", p.eta);
            out.model = cev_gauss_model(p);
            out.params = {{"delta", p.delta}, {"beta", p.beta}, {"lambda", p.lambda}, {"m", p.m}, {"eta", p.eta}};
        } else if (*preset == "cev-vg") {
            CevVgParams p;
            p.delta = s.number("model.delta", p.delta);
            p.beta = s.number("model.beta", p.beta);
            p.theta = s.number("model.theta", p.theta);
            p.rho = s.number("model.rho", p.rho);
            p.kappa = s.number("model.kappa", p.kappa);
            out.model = cev_vg_model(p);
            out.params = {{"delta", p.delta}, {"beta", p.beta}, {"theta", p.theta}, {"rho", p.rho}, {"kappa", p.kappa}};
        } else {
            for (const auto& k : kPresetParams)
                require(!s.has("model." + k), ErrorKind::Config,
                        "model." + k + " applies to the cev-gauss and cev-vg presets only");
            Preset p = make_preset(*preset);
            out.model = p.model;
            out.params = p.params;
        }
        out.source = *preset;
    } else {
        ModelDomain dom;
        dom.t_lo = s.number("model.domain.t_lo", dom.t_lo);
        dom.t_hi = s.number("model.domain.t_hi", dom.t_hi);
        dom.x_lo = s.number("model.domain.x_lo", dom.x_lo);
        dom.x_hi = s.number("model.domain.x_hi", dom.x_hi);
        const std::string mult_default = s.text("model.jump.measure", "none") == "none" ? "0" : "1";
        out.model = ModelSpec(field(s, "model.a", "0"), field(s, "model.gamma", "0"),
                              field(s, "model.jump.multiplier", mult_default), measure(s), dom);
        out.model.name = "file";
        out.source = "file";
    }
    out.x0 = s.number("model.x0", 0.0);
    return out;
}

PricingRequest resolve_request(const Settings& s, const ModelChoice& m) {
    PricingRequest r;
    r.model = m.model;
    r.x0 = m.x0;
    r.basis.family = basis_family_from_string(s.text("basis.family", to_string(r.basis.family)));
    r.basis.xbar = s.number("basis.xbar", r.basis.xbar);
    r.basis.delta = s.number("basis.delta", r.basis.delta);
    r.basis.x1 = s.number("basis.x1", r.basis.x1);
    r.basis.x2 = s.number("basis.x2", r.basis.x2);
    r.basis.shift = s.number("basis.shift", r.basis.shift);
    r.basis.quad_order = s.integer("basis.quad_order", r.basis.quad_order);
    r.basis.finite_differences = s.boolean("basis.finite_differences", r.basis.finite_differences);
    r.order = s.integer("numerics.order", r.order);
    require(r.order >= 0, ErrorKind::Config, "numerics.order must be nonnegative");
    r.payoff = payoff_kind_from_string(s.text("numerics.payoff", to_string(r.payoff)));
    r.t = s.number("numerics.t0", r.t);
    const auto Ts = s.numbers("numerics.T");
    if (!Ts.empty()) r.T = Ts.front();
    r.strikes = s.numbers("numerics.k");
    r.engine = engine_kind_from_string(s.text("numerics.engine", to_string(r.engine)));
    r.contour = s.number("numerics.contour", r.contour);
    if (s.text("numerics.R", "auto") != "auto") r.fourier.R = s.number("numerics.R", r.fourier.R);
    r.fourier.R_cap = s.number("numerics.R_cap", r.fourier.R_cap);
    r.fourier.panel_width = s.number("numerics.panel_width", r.fourier.panel_width);
    r.fourier.panel_points = s.integer("numerics.panel_points", r.fourier.panel_points);
    r.fourier.tail_tol = s.number("numerics.tail_tol", r.fourier.tail_tol);
    r.fourier.imag_tol = s.number("numerics.imag_tol", r.fourier.imag_tol);
    r.time_quad_order = s.integer("numerics.time_quad_order", r.time_quad_order);
    r.implied_vol = s.boolean("numerics.implied_vol", r.implied_vol);
    r.default_payment = s.boolean("numerics.default_payment", r.default_payment);
    return r;
}

SimulationConfig resolve_mc(const Settings& s, const ModelSpec& model) {
    SimulationConfig c;
    c.scheme = s.has("mc.scheme") ? mc_scheme_from_string(*s.get("mc.scheme")) : default_scheme(model);
    const double paths = s.number("mc.paths", static_cast<double>(c.paths));
    require(paths >= 1.0 && paths == std::floor(paths), ErrorKind::Config, "mc.paths must be a positive integer");
    c.paths = static_cast<std::size_t>(paths);
    c.dt = s.number("mc.dt", c.dt);
    require(c.dt > 0.0, ErrorKind::Config, "mc.dt must be positive");
    const double seed = s.number("mc.seed", static_cast<double>(c.seed));
    require(seed >= 0.0 && seed == std::floor(seed), ErrorKind::Config, "mc.seed must be a nonnegative integer");
    c.seed = static_cast<std::uint64_t>(seed);
    c.antithetic = s.boolean("mc.antithetic", c.antithetic);
    const int threads = s.integer("mc.threads", 0);
    require(threads >= 0, ErrorKind::Config, "mc.threads must be nonnegative");
    c.threads = static_cast<unsigned>(threads);
    c.absorb_below = s.number("mc.absorb_below", c.absorb_below);
    return c;
}

BoundChoice resolve_bound(const Settings& s, const ModelSpec& model) {
    BoundChoice b;
    ModelDomain box = model.domain();
    box.x_lo = s.number("numerics.bound_x_lo", box.x_lo);
    box.x_hi = s.number("numerics.bound_x_hi", box.x_hi);
    const ModelBoundInputs in = bound_inputs(model, box);
    b.params = in.params;
    b.dnu_norm = in.dnu_norm;
    if (s.has("numerics.bound_M")) {
        b.params.M = s.number("numerics.bound_M", b.params.M);
        require(b.params.M > 0.0, ErrorKind::Config, "numerics.bound_M must be positive");
    }
    b.C = s.number("numerics.bound_C", 1.0);
    require(b.C > 0.0, ErrorKind::Config, "numerics.bound_C must be positive");
    return b;
}

std::string emit_config(const Settings& s) {
    const ModelChoice m = resolve_model(s);
    const PricingRequest r = resolve_request(s, m);
    std::ostringstream os;
    os << "[model]\n";
    if (s.has("model.randomize")) os << "randomize = " << *s.get("model.randomize") << "\n";
    if (s.has("model.preset")) os << "preset = " << *s.get("model.preset") << "\n";
    std::map<std::string, std::string> lines;
    if (!s.has("model.randomize"))
        for (const auto& [k, v] : m.params) lines[k] = fmt(v);
    for (const auto& k : kKeys) {
        if (k.rfind("model.", 0) != 0 || k == "model.preset" || k == "model.randomize" || k == "model.x0") continue;
        if (auto v = s.get(k)) lines[k.substr(6)] = *v;
    }
    for (const auto& [k, v] : lines) os << k << " = " << v << "\n";
    os << "x0 = " << fmt(m.x0) << "\n\n";

    os << "[basis]\nfamily = " << to_string(r.basis.family) << "\n";
    try {
        const SymbolExpansion e = request_expansion(r);
        if (r.basis.family == BasisFamily::TwoPoint)
            os << "x1 = " << fmt(e.x1) << "\nx2 = " << fmt(e.x2) << "\nshift = " << fmt(e.shift) << "\n";
        else
            os << "xbar = " << fmt(e.xbar) << "\n";
        if (r.basis.family == BasisFamily::Hermite) os << "quad_order = " << e.quad_order << "\n";
    } catch (const Error&) {
        // the basis cannot be built for this model; echo the raw choice
        os << "delta = " << fmt(r.basis.delta) << "\n";
    }
    os << "finite_differences = " << (r.basis.finite_differences ? "true" : "false") << "\n\n";

    const PayoffTransform probe = r.payoff == PayoffKind::Call ? PayoffTransform::call(0.0)
                                  : r.payoff == PayoffKind::Delta ? PayoffTransform::delta(0.0)
                                  : r.payoff == PayoffKind::Put   ? PayoffTransform::put(0.0)
                                                                  : PayoffTransform::constant(1.0);
    os << "[numerics]\norder = " << r.order << "\npayoff = " << to_string(r.payoff) << "\nt0 = " << fmt(r.t)
       << "\nT = " << (s.has("numerics.T") ? join(s.numbers("numerics.T")) : fmt(r.T)) << "\n";
    if (!r.strikes.empty()) os << "k = " << join(r.strikes) << "\n";
    if (s.has("numerics.y")) os << "y = " << join(s.numbers("numerics.y")) << "\n";
    os << "engine = " << to_string(r.engine) << "\ncontour = "
       << fmt(std::isnan(r.contour) ? probe.default_contour() : r.contour) << "\n";
    os << "R = " << (r.fourier.R > 0 ? fmt(r.fourier.R) : std::string("auto")) << "\nR_cap = " << fmt(r.fourier.R_cap)
       << "\npanel_width = " << fmt(r.fourier.panel_width) << "\npanel_points = " << r.fourier.panel_points
       << "\ntail_tol = " << fmt(r.fourier.tail_tol) << "\nimag_tol = " << fmt(r.fourier.imag_tol)
       << "\ntime_quad_order = " << r.time_quad_order << "\nimplied_vol = " << (r.implied_vol ? "true" : "false")
       << "\ndefault_payment = " << (r.default_payment ? "true" : "false") << "\n";
    for (const char* k : {"numerics.bound_M", "numerics.bound_C", "numerics.bound_x_lo", "numerics.bound_x_hi"})
        if (auto v = s.get(k)) os << std::string(k).substr(9) << " = " << *v << "\n";
    os << "\n";

    try {
        const SimulationConfig c = resolve_mc(s, m.model);
        os << "[mc]\nscheme = " << to_string(c.scheme) << "\npaths = " << c.paths << "\ndt = " << fmt(c.dt)
           << "\nseed = " << c.seed << "\nantithetic = " << (c.antithetic ? "true" : "false")
           << "\nthreads = " << c.threads << "\nabsorb_below = " << fmt(c.absorb_below) << "\n";
    } catch (const Error&) {
        os << "[mc]\n";
    }
    return os.str();
}

}  // namespace levyx::cli
