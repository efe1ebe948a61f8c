#include "levyx_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <tuple>

#include <CLI11.hpp>

#include "levyx/black_scholes.hpp"
#include "levyx/bounds.hpp"
#include "levyx/error.hpp"
#include "levyx/mc.hpp"
#include "levyx_cli/reference.hpp"

namespace levyx::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> maturities(const Settings& s) {
    auto Ts = s.numbers("numerics.T");
    if (Ts.empty()) Ts.push_back(1.0);
    return Ts;
}

std::vector<double> strikes(const Settings& s) {
    auto ks = s.numbers("numerics.k");
    require(!ks.empty(), ErrorKind::Config, "no strikes given (numerics.k / --k)");
    return ks;
}

std::vector<std::string> term_columns(int N) {
    std::vector<std::string> c;
    for (int n = 0; n <= N; ++n) c.push_back("v" + std::to_string(n));
    return c;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void append_unique(std::vector<std::string>& into, const std::vector<std::string>& from) {
    for (const auto& w : from)
        if (std::find(into.begin(), into.end(), w) == into.end()) into.push_back(w);
}

double safe_iv(double price, bool is_call, double tau, double x, double k) {
    try {
        return implied_vol(price, is_call, tau, x, k);
    } catch (const Error&) {
        return kNaN;
    }
}

void finish(CommandResult& r) {
    for (const auto& w : r.warnings) r.table.note("warning: " + w);
}

// price at every maturity on the worker pool, rows in input order
std::vector<PricingReport> price_all(const PricingRequest& base, const std::vector<double>& Ts) {
    std::vector<PricingReport> reps(Ts.size());
    parallel_for(Ts.size(), [&](std::size_t i) {
        PricingRequest r = base;
        r.T = Ts[i];
        reps[i] = price_option(r);
    });
    return reps;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
    return (kind == ErrorKind::Config || kind == ErrorKind::Unsupported) ? kConfigError : kNumericError;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::min<std::size_t>(resolve_threads(0), std::max<std::size_t>(n, 1));
    std::vector<std::exception_ptr> errors(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next++) < n;) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

CommandResult cmd_price(const Settings& in, const CommandOptions& o) {
    Settings s = in;
    const ReferenceTable* ref = nullptr;
    if (!o.table.empty()) {
        ref = &reference_table(o.table);
        if (!s.has("model.preset") && !s.has_model_keys()) s.set("model.preset", ref->preset);
        if (!s.has("basis.family")) s.set("basis.family", ref->basis);
        if (!s.has("numerics.order")) s.set("numerics.order", std::to_string(ref->order));
        if (!s.has("numerics.payoff")) s.set("numerics.payoff", ref->payoff);
    }
    const ModelChoice m = resolve_model(s);
    PricingRequest req = resolve_request(s, m);
    require(req.payoff != PayoffKind::Constant, ErrorKind::Config, "use the bond command for constant payoffs");

    std::vector<double> Ts;
    std::vector<std::vector<double>> ks;
    if (ref) {
        for (const auto& row : ref->rows) {
            if (Ts.empty() || Ts.back() != row.t) {
                Ts.push_back(row.t);
                ks.emplace_back();
            }
            ks.back().push_back(row.k);
        }
    } else {
        Ts = maturities(s);
        ks.assign(Ts.size(), strikes(s));
    }

    auto cols = concat({"t", "k"}, term_columns(req.order));
    cols = concat(cols, {"v", "iv", "elapsed"});
    if (o.greeks) cols = concat(cols, {"delta", "gamma"});
    if (ref) cols = concat(cols, {"ref_u", "ref_iv", "du", "div", "ok"});
    CommandResult out{Table("price", cols)};

    std::vector<PricingReport> reps(Ts.size());
    std::vector<std::vector<Greeks>> gr(Ts.size());
    parallel_for(Ts.size(), [&](std::size_t i) {
        PricingRequest r = req;
        r.T = Ts[i];
        r.strikes = ks[i];
        reps[i] = price_option(r);
        if (o.greeks) gr[i] = greeks(r);
    });

    std::size_t ref_index = 0;
    for (std::size_t i = 0; i < Ts.size(); ++i) {
        append_unique(out.warnings, reps[i].warnings);
        for (std::size_t j = 0; j < reps[i].rows.size(); ++j) {
            const auto& row = reps[i].rows[j];
            std::vector<Cell> cells{Ts[i], row.k};
            for (double v : row.terms) cells.emplace_back(v);
            cells.insert(cells.end(), {row.total, row.iv, row.elapsed});
            if (o.greeks) cells.insert(cells.end(), {gr[i][j].delta, gr[i][j].gamma});
            if (ref) {
                const auto& rr = ref->rows[ref_index++];
                const double du = row.total - rr.u, div = row.iv - rr.iv;
                const bool ok = std::abs(du) <= o.tol_u && std::abs(div) <= o.tol_iv;
                cells.insert(cells.end(), {rr.u, rr.iv, du, div, ok});
                if (!ok) out.status = kTableRegression;
            }
            out.table.add(std::move(cells));
        }
    }
    out.table.note("model=" + m.source + " basis=" + to_string(req.basis.family) + " order=" +
                   std::to_string(req.order) + " payoff=" + to_string(req.payoff));
    finish(out);
    return out;
}

CommandResult cmd_density(const Settings& s, const CommandOptions& o) {
    const ModelChoice m = resolve_model(s);
    PricingRequest req = resolve_request(s, m);
    req.payoff = PayoffKind::Delta;
    req.implied_vol = false;
    const auto ys = s.numbers("numerics.y");
    require(!ys.empty(), ErrorKind::Config, "no target log-prices given (numerics.y / --y)");
    if (o.bound) req.basis.family = BasisFamily::Taylor;

    std::vector<std::string> cols{"t", "y", "p"};
    BoundChoice b;
    if (o.bound) {
        b = resolve_bound(s, m.model);
        cols = concat(cols, {"envelope", "gamma_bar", "gamma_tilde", "M", "dnu", "C"});
    }
    CommandResult out{Table("density", cols)};
    const auto Ts = maturities(s);
    std::vector<PricingReport> reps(Ts.size());
    parallel_for(Ts.size(), [&](std::size_t i) {
        PricingRequest r = req;
        r.T = Ts[i];
        reps[i] = density(r, ys, o.bound);
    });
    for (std::size_t i = 0; i < Ts.size(); ++i) {
        append_unique(out.warnings, reps[i].warnings);
        for (std::size_t j = 0; j < ys.size(); ++j) {
            std::vector<Cell> cells{Ts[i], ys[j], reps[i].rows[j].total};
            if (o.bound) {
                const EnvelopeTerms e = density_error_envelope(req.t, m.x0, Ts[i], ys[j], b.params, b.dnu_norm, b.C);
                cells.insert(cells.end(), {e.value, e.gamma_bar, e.gamma_tilde, b.params.M, b.dnu_norm, b.C});
            }
            out.table.add(std::move(cells));
        }
    }
    if (o.bound) out.table.note("envelope columns are shapes with a user constant C, not certified bounds");
    finish(out);
    return out;
}

CommandResult cmd_iv(const Settings& s, const CommandOptions& o) {
    const std::string payoff = s.text("numerics.payoff", "put");
    require(payoff == "put" || payoff == "call", ErrorKind::Config, "implied volatility needs a put or call payoff");
    const bool is_call = payoff == "call";
    CommandResult out{Table("iv", {"t", "k", "price", "iv"})};
    const double t0 = s.number("numerics.t0", 0.0);
    const double x0 = s.number("model.x0", 0.0);
    if (!o.prices.empty()) {
        const auto Ts = maturities(s);
        auto ks = strikes(s);
        require(Ts.size() == 1, ErrorKind::Config, "price inversion takes a single maturity");
        if (ks.size() == 1) ks.assign(o.prices.size(), ks.front());
        require(ks.size() == o.prices.size(), ErrorKind::Config, "give one strike or one strike per price");
        for (std::size_t i = 0; i < ks.size(); ++i)
            out.table.add({Ts[0], ks[i], o.prices[i], implied_vol(o.prices[i], is_call, Ts[0] - t0, x0, ks[i])});
        return out;
    }
    const ModelChoice m = resolve_model(s);
    PricingRequest req = resolve_request(s, m);
    req.strikes = strikes(s);
    const auto Ts = maturities(s);
    const auto reps = price_all(req, Ts);
    for (std::size_t i = 0; i < Ts.size(); ++i) {
        append_unique(out.warnings, reps[i].warnings);
        for (const auto& row : reps[i].rows) out.table.add({Ts[i], row.k, row.total, row.iv});
    }
    finish(out);
    return out;
}

CommandResult cmd_bond(const Settings& s, const CommandOptions&) {
    const ModelChoice m = resolve_model(s);
    PricingRequest req = resolve_request(s, m);
    req.payoff = PayoffKind::Constant;
    CommandResult out{Table("bond", concat(concat({"t"}, term_columns(req.order)), {"value", "spread"}))};
    const auto Ts = maturities(s);
    std::vector<BondResult> res(Ts.size());
    parallel_for(Ts.size(), [&](std::size_t i) {
        PricingRequest r = req;
        r.T = Ts[i];
        res[i] = bond_price(r);
    });
    for (std::size_t i = 0; i < Ts.size(); ++i) {
        std::vector<Cell> cells{Ts[i]};
        for (double v : res[i].terms) cells.emplace_back(v);
        cells.insert(cells.end(), {res[i].value, res[i].spread});
        out.table.add(std::move(cells));
    }
    return out;
}

CommandResult cmd_bound(const Settings& s, const CommandOptions& o) {
    const ModelChoice m = resolve_model(s);
    const BoundChoice b = resolve_bound(s, m.model);
    const double x = std::isnan(o.x) ? m.x0 : o.x;
    const double t0 = s.number("numerics.t0", 0.0);
    const auto Ts = maturities(s);
    const auto ys = s.numbers("numerics.y");
    if (!ys.empty()) {
        CommandResult out{Table("bound", {"t0", "x", "T", "y", "M", "dnu", "C", "gamma_bar", "gamma_tilde", "envelope"})};
        for (double T : Ts)
            for (double y : ys) {
                const EnvelopeTerms e = density_error_envelope(t0, x, T, y, b.params, b.dnu_norm, b.C);
                out.table.add({t0, x, T, y, b.params.M, b.dnu_norm, b.C, e.gamma_bar, e.gamma_tilde, e.value});
            }
        out.table.note("envelope shapes with a user constant C, not certified bounds");
        return out;
    }
    const auto ks = s.numbers("numerics.k");
    require(!ks.empty(), ErrorKind::Config, "bound needs target points (--y) or strikes (--k)");
    const std::string payoff = s.text("numerics.payoff", "put");
    require(payoff == "put" || payoff == "call", ErrorKind::Config, "price envelopes need a put or call payoff");
    CommandResult out{Table("bound", {"t0", "x", "T", "k", "M", "dnu", "C", "envelope"})};
    for (double T : Ts)
        for (double k : ks) {
            const PayoffTransform h = payoff == "put" ? PayoffTransform::put(k) : PayoffTransform::call(k);
            const double env = price_error_envelope([&](double y) { return std::abs(h.payoff(y)); }, t0, x, T,
                                                    b.params, b.dnu_norm, b.C);
            out.table.add({t0, x, T, k, b.params.M, b.dnu_norm, b.C, env});
        }
    out.table.note("envelope shapes with a user constant C, not certified bounds");
    return out;
}

CommandResult cmd_mc(const Settings& s, const CommandOptions&) {
    const ModelChoice m = resolve_model(s);
    const PricingRequest req = resolve_request(s, m);
    const SimulationConfig cfg = resolve_mc(s, m.model);
    const auto Ts = maturities(s);
    const TerminalSamples samples = simulate_paths(m.model, cfg, m.x0, req.t, Ts);
    CommandResult out{Table("mc", {"t", "k", "mean", "se", "lo", "hi", "paths", "elapsed"})};
    std::vector<double> ks{kNaN};
    if (req.payoff == PayoffKind::Put || req.payoff == PayoffKind::Call) ks = strikes(s);
    require(req.payoff != PayoffKind::Delta, ErrorKind::Unsupported, "the mc command estimates payoffs, not densities");
    for (std::size_t i = 0; i < Ts.size(); ++i)
        for (double k : ks) {
            double on_default = 0.0;
            std::function<double(double)> h = [](double) { return 1.0; };
            if (req.payoff == PayoffKind::Put) {
                on_default = req.default_payment ? std::exp(k) : 0.0;
                h = [k](double x) { return std::max(std::exp(k) - std::exp(x), 0.0); };
            } else if (req.payoff == PayoffKind::Call) {
                h = [k](double x) { return std::max(std::exp(x) - std::exp(k), 0.0); };
            }
            const MCEstimate e = estimate(samples.x[i], samples.survived[i], h, on_default, samples.elapsed);
            out.table.add({Ts[i], k, e.mean, e.se, e.lo, e.hi, static_cast<long long>(e.paths), e.elapsed});
        }
    out.table.note("scheme=" + to_string(cfg.scheme) + " dt=" + format_number(cfg.dt) + " seed=" +
                   std::to_string(cfg.seed) + " model=" + m.source);
    return out;
}

CommandResult cmd_compare(const Settings& s, const CommandOptions& o) {
    const ModelChoice m = resolve_model(s);
    PricingRequest req = resolve_request(s, m);
    require(req.payoff == PayoffKind::Put || req.payoff == PayoffKind::Call, ErrorKind::Config,
            "compare needs a put or call payoff");
    req.strikes = strikes(s);
    const SimulationConfig cfg = resolve_mc(s, m.model);
    const auto Ts = maturities(s);
    const bool is_call = req.payoff == PayoffKind::Call;

    std::vector<std::string> cols;
    for (const auto& [k, v] : m.params) cols.push_back(k);
    cols = concat(cols, {"t", "k", "v", "iv", "mc_mean", "mc_lo", "mc_hi", "mc_iv_lo", "mc_iv_hi", "in_ci", "tau_ratio"});
    CommandResult out{Table("compare", cols)};

    const int repeats = std::max(1, o.repeats);
    std::vector<PricingReport> reps(Ts.size());
    std::vector<double> ratio(Ts.size());
    for (std::size_t i = 0; i < Ts.size(); ++i) {
        PricingRequest r = req;
        r.T = Ts[i];
        PricingRequest r0 = r;
        r0.order = 0;
        r0.implied_vol = false;
        r.implied_vol = false;
        double best_n = std::numeric_limits<double>::infinity(), best_0 = best_n;
        for (int rep = 0; rep < repeats; ++rep) {
            best_0 = std::min(best_0, price_option(r0).elapsed);
            auto pr = price_option(r);
            best_n = std::min(best_n, pr.elapsed);
            if (rep == 0) reps[i] = std::move(pr);
        }
        ratio[i] = best_n / best_0;
        append_unique(out.warnings, reps[i].warnings);
    }
    const TerminalSamples samples = simulate_paths(m.model, cfg, m.x0, req.t, Ts);
    for (std::size_t i = 0; i < Ts.size(); ++i)
        for (const auto& row : reps[i].rows) {
            const double k = row.k;
            const double on_default = (!is_call && req.default_payment) ? std::exp(k) : 0.0;
            auto h = [&](double x) {
                return is_call ? std::max(std::exp(x) - std::exp(k), 0.0) : std::max(std::exp(k) - std::exp(x), 0.0);
            };
            const MCEstimate e = estimate(samples.x[i], samples.survived[i], h, on_default, samples.elapsed);
            const double tau = Ts[i] - req.t;
            std::vector<Cell> cells;
            for (const auto& [name, v] : m.params) cells.emplace_back(v);
            const bool in = e.lo <= row.total && row.total <= e.hi;
            cells.insert(cells.end(), {Ts[i], k, row.total, safe_iv(row.total, is_call, tau, m.x0, k), e.mean, e.lo,
                                       e.hi, safe_iv(e.lo, is_call, tau, m.x0, k), safe_iv(e.hi, is_call, tau, m.x0, k),
                                       in, ratio[i]});
            out.table.add(std::move(cells));
        }
    out.table.note("mc paths=" + std::to_string(cfg.paths) + " dt=" + format_number(cfg.dt) + " seed=" +
                   std::to_string(cfg.seed));
    finish(out);
    return out;
}

namespace {

struct Parsed {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::string format = "csv";
    std::string output;
    bool emit = false;
    bool no_timing = false;
    CommandOptions opts;
};

void add_common(CLI::App* sub, Parsed& p) {
    auto setting = [&p, sub](const std::string& flag, const std::string& key, const std::string& help) {
        sub->add_option_function<std::string>(
            flag, [&p, key](const std::string& v) { p.overrides.emplace_back(key, v); }, help);
    };
    sub->add_option("--config", p.config_path, "INI file with [model], [basis], [numerics], [mc] sections");
    setting("--preset", "model.preset", "named model: cev-gauss, cev-vg, bs, merton");
    setting("--randomize", "model.randomize", "draw cev-gauss parameters from this seed");
    setting("--x0", "model.x0", "log spot");
    setting("--basis", "basis.family", "taylor, two-point or hermite");
    setting("--xbar", "basis.xbar", "Taylor/Hermite center (default x0)");
    setting("--delta", "basis.delta", "two-point half width");
    setting("--x1", "basis.x1", "two-point left node");
    setting("--x2", "basis.x2", "two-point right node");
    setting("--shift", "basis.shift", "two-point shift (default f(x0))");
    setting("--quad-order", "basis.quad_order", "Hermite projection points");
    setting("--order", "numerics.order", "expansion order N");
    setting("--payoff", "numerics.payoff", "put, call, delta or bond");
    setting("--start", "numerics.t0", "valuation time");
    setting("--t", "numerics.T", "maturity or comma list");
    setting("--k", "numerics.k", "log-strike or comma list");
    setting("--y", "numerics.y", "target log-price or comma list");
    setting("--engine", "numerics.engine", "auto, homogeneous or inhomogeneous");
    setting("--contour", "numerics.contour", "Im(xi) of the inversion contour");
    setting("--R", "numerics.R", "frequency truncation (default automatic)");
    setting("--time-quad", "numerics.time_quad_order", "Gauss-Legendre points per time level");
    setting("--M", "numerics.bound_M", "dominating constant (default from the model)");
    setting("--C", "numerics.bound_C", "envelope constant");
    setting("--paths", "mc.paths", "Monte Carlo paths");
    setting("--dt", "mc.dt", "Monte Carlo time step");
    setting("--seed", "mc.seed", "Monte Carlo seed");
    setting("--scheme", "mc.scheme", "euler or vg");
    setting("--threads", "mc.threads", "Monte Carlo worker threads");
    sub->add_flag_function("--antithetic", [&p](std::int64_t) { p.overrides.emplace_back("mc.antithetic", "true"); },
                           "antithetic normals (Euler scheme)");
    sub->add_flag_function("--no-iv", [&p](std::int64_t) { p.overrides.emplace_back("numerics.implied_vol", "false"); },
                           "skip implied volatilities");
    sub->add_option("--format", p.format, "csv or jsonl")->capture_default_str();
    sub->add_option("--output,-o", p.output, "write to a file instead of stdout");
    sub->add_flag("--emit-config", p.emit, "print the resolved configuration and exit");
    sub->add_flag("--no-timing", p.no_timing, "write timing columns as 0 for byte-stable output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"levyx: expansions, Monte Carlo and envelopes for Levy-type models"};
    app.require_subcommand(1, 1);
    Parsed p;
    p.opts.x = kNaN;

    using Fn = CommandResult (*)(const Settings&, const CommandOptions&);
    const std::vector<std::tuple<std::string, std::string, Fn>> commands = {
        {"price", "option prices and implied volatilities", cmd_price},
        {"density", "transition density slices", cmd_density},
        {"iv", "implied-volatility curves or price inversion", cmd_iv},
        {"bond", "survival values and credit spreads", cmd_bond},
        {"bound", "error envelope shapes", cmd_bound},
        {"mc", "Monte Carlo estimates", cmd_mc},
        {"compare", "expansion against Monte Carlo", cmd_compare},
    };
    std::map<const CLI::App*, Fn> dispatch;
    for (const auto& [name, help, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, p);
        dispatch[sub] = fn;
        if (name == "price") {
            sub->add_option("--table", p.opts.table, "check against a reference table (cev-gauss, cev-vg); exit 4 on mismatch");
            sub->add_option("--tol-u", p.opts.tol_u, "table price tolerance")->capture_default_str();
            sub->add_option("--tol-iv", p.opts.tol_iv, "table IV tolerance")->capture_default_str();
            sub->add_flag("--greeks", p.opts.greeks, "add delta and gamma in the spot");
        } else if (name == "density") {
            sub->add_flag("--bound", p.opts.bound, "add envelope columns (Taylor basis centered at each y)");
        } else if (name == "iv") {
            sub->add_option("--price", p.opts.prices, "prices to invert")->delimiter(',');
        } else if (name == "bound") {
            sub->add_option("--x", p.opts.x, "start log-price (default x0)");
        } else if (name == "compare") {
            sub->add_option("--repeats", p.opts.repeats, "timing repetitions")->capture_default_str();
        }
    }

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        Settings s = p.config_path.empty() ? Settings() : Settings::from_file(p.config_path);
        for (const auto& [k, v] : p.overrides) s.set(k, v);
        const Format format = format_from_string(p.format);
        std::ofstream file;
        if (!p.output.empty()) {
            file.open(p.output);
            require(file.good(), ErrorKind::Config, "cannot open output file '" + p.output + "'");
        }
        std::ostream& sink = p.output.empty() ? out : file;
        if (p.emit) {
            sink << emit_config(s);
            return kOk;
        }
        const CLI::App* chosen = app.get_subcommands().front();
        CommandResult r = dispatch.at(chosen)(s, p.opts);
        if (p.no_timing)
            for (const char* c : {"elapsed", "tau_ratio"}) r.table.fill_column(c, 0.0);
        r.table.write(sink, format);
        for (const auto& w : r.warnings) err << "levyx: warning: " << w << "\n";
        if (r.status == kTableRegression) err << "levyx: reference table regression\n";
        return r.status;
    } catch (const Error& e) {
        err << "levyx: error class=" << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "levyx: error class=numeric: " << e.what() << "\n";
        return kNumericError;
    }
}

}  // namespace levyx::cli
