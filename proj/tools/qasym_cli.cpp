/* qasym: command-line surface for the q-series asymptotics library.
 *
 * Subcommands: theta, poly eval, poly zeros, partition exact|predict|converge,
 * asym check, selftest. Exit codes: 0 success, 1 usage error, 2 numerical
 * failure. Outputs are deterministic: identical flags produce byte-identical
 * artifacts. Every output file starts with a config echo (comment line for
 * text formats, "config" member for JSON). */

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "qasym/asymptotics.hpp"
#include "qasym/context.hpp"
#include "qasym/partition.hpp"
#include "qasym/qpoly.hpp"
#include "qasym/qseries.hpp"
#include "qasym/zeros.hpp"

namespace {

constexpr const char* kArtifactVersion = "qasym/1";

struct RunConfig {
    std::string q = "0.5";
    long bits = 256;
    std::string tail_tol = "1e-40";
    std::string format = "csv";  // csv | json
    std::string output;          // empty -> stdout
    std::string subcommand;
};

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--q", cfg.q, "base q as a decimal literal, 0 < q < 1")
        ->capture_default_str();
    cmd->add_option("--bits,--precision-bits", cfg.bits, "mantissa precision in bits")
        ->envname("QASYM_PRECISION_BITS")
        ->capture_default_str();
    cmd->add_option("--tail-tol", cfg.tail_tol, "series truncation tolerance")
        ->capture_default_str();
    cmd->add_option("--format", cfg.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output,-o", cfg.output, "write the artifact to this path");
}

qasym::QContext make_run_context(const RunConfig& cfg) {
    double qd = 0.0, tol = 0.0;
    try {
        qd = std::stod(cfg.q);
        tol = std::stod(cfg.tail_tol);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed --q or --tail-tol literal");
    }
    if (!(qd > 0.0 && qd < 1.0)) throw std::invalid_argument("--q must satisfy 0 < q < 1");
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("--tail-tol must be in (0,1)");
    if (cfg.bits < 64 || cfg.bits > (1L << 20))
        throw std::invalid_argument("--bits must be in [64, 1048576]");
    return qasym::make_context(cfg.q, cfg.bits, tol);
}

std::string config_comment(const RunConfig& cfg) {
    return "# config: subcommand=" + cfg.subcommand + " q=" + cfg.q +
           " precision_bits=" + std::to_string(cfg.bits) + " tail_tol=" + cfg.tail_tol +
           " version=" + kArtifactVersion;
}

nlohmann::json config_json(const RunConfig& cfg) {
    return {{"subcommand", cfg.subcommand},
            {"q", cfg.q},
            {"precision_bits", cfg.bits},
            {"tail_tol", cfg.tail_tol},
            {"version", kArtifactVersion}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + path);
    f << text;
}

/* Tabular/text artifact: config comment + body to stdout or file. */
void emit_text(const RunConfig& cfg, const std::string& body) {
    std::string text = config_comment(cfg) + "\n" + body;
    if (cfg.output.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_file(cfg.output, text);
}

/* JSON artifact: the config echo is a member (JSON admits no comments). */
void emit_json(const RunConfig& cfg, nlohmann::json doc) {
    doc["config"] = config_json(cfg);
    std::string text = doc.dump(2) + "\n";
    if (cfg.output.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_file(cfg.output, text);
}

/* Bare scalar: value on stdout; config comment prepended in file mode.
 * Magnitudes below the truncation tolerance display as exact zero. */
void emit_scalar(const RunConfig& cfg, const qasym::QContext& ctx, const qasym::ScaledReal& v) {
    std::string shown =
        v.abs() < ctx.real(ctx.tail_tol()) ? "0e0" : v.to_decimal(16);
    if (cfg.format == "json") {
        nlohmann::json doc;
        doc["value"] = shown;
        emit_json(cfg, doc);
        return;
    }
    if (cfg.output.empty())
        std::fputs((shown + "\n").c_str(), stdout);
    else
        write_file(cfg.output, config_comment(cfg) + "\n" + shown + "\n");
}

/* ---------------------------------------------------------------- theta -- */

struct ThetaArgs {
    std::string z;
    unsigned j = 0;
    long m = 0;
};

void run_theta(const RunConfig& cfg, const ThetaArgs& a) {
    qasym::QContext ctx = make_run_context(cfg);
    qasym::ScaledReal v = qasym::X_jm(ctx, a.j, a.m, ctx.parse(a.z));
    emit_scalar(cfg, ctx, v);
}

/* ------------------------------------------------------------ poly eval -- */

struct PolyArgs {
    std::string family;
    long n = 0;
    std::string alpha = "0";
    std::string x;
    unsigned j = 0;
    bool paper_table = false;
};

void run_poly_eval(const RunConfig& cfg, const PolyArgs& a) {
    qasym::QContext ctx = make_run_context(cfg);
    qasym::ScaledReal x = ctx.parse(a.x);
    qasym::ScaledReal v = ctx.zero();
    if (a.family == "sw") {
        v = qasym::eval_pnj(ctx, qasym::sw_monic_poly(ctx, a.n), a.j, x);
    } else if (a.family == "qlaguerre") {
        v = qasym::eval_pnj(ctx, qasym::q_laguerre_poly(ctx, a.n, a.alpha), a.j, x);
    } else {  // qhermite: argument is xi, no derivative mode
        if (a.j != 0)
            throw std::invalid_argument("--j is not supported for family qhermite");
        v = qasym::q_hermite_eval(ctx, a.n, x);
    }
    emit_scalar(cfg, ctx, v);
}

/* ----------------------------------------------------------- poly zeros -- */

void run_poly_zeros(const RunConfig& cfg, const PolyArgs& a) {
    qasym::QContext ctx = make_run_context(cfg);
    qasym::QPolynomial poly;
    double hint = 0.0;
    qasym::ScaledReal exponent = ctx.zero();
    if (a.family == "sw") {
        poly = qasym::sw_monic_poly(ctx, a.n);
        hint = qasym::sw_hint_exponent();
        exponent = ctx.integer(2 * a.n + 1);
    } else if (a.family == "qlaguerre") {
        poly = qasym::q_laguerre_poly(ctx, a.n, a.alpha);
        hint = qasym::laguerre_hint_exponent(std::stod(a.alpha));
        exponent = ctx.integer(2 * a.n) + ctx.integer(2) * ctx.parse(a.alpha);
    } else {
        throw std::invalid_argument("zeros are located in x; use family sw or qlaguerre");
    }
    qasym::ZeroSet zs = qasym::find_positive_zeros(ctx, poly, hint);
    if (a.paper_table) {
        std::string line = qasym::paper_table_line(ctx, zs, exponent);
        if (cfg.output.empty())
            std::fputs((line + "\n").c_str(), stdout);
        else
            write_file(cfg.output, config_comment(cfg) + "\n" + line + "\n");
        return;
    }
    std::vector<qasym::ScaledReal> prods = qasym::symmetry_products(ctx, zs, exponent);
    std::size_t n = zs.count();
    if (cfg.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t k = 0; k < prods.size(); ++k) {
            rows.push_back({{"k", k + 1},
                            {"x_k", zs.zeros[k].to_decimal(16)},
                            {"x_{n+1-k}", zs.zeros[n - 1 - k].to_decimal(16)},
                            {"normalized_product", prods[k].to_decimal(16)}});
        }
        emit_json(cfg, {{"rows", rows}});
        return;
    }
    std::string body = "k,x_k,x_{n+1-k},normalized_product\n";
    for (std::size_t k = 0; k < prods.size(); ++k) {
        body += std::to_string(k + 1) + "," + zs.zeros[k].to_decimal(16) + "," +
                zs.zeros[n - 1 - k].to_decimal(16) + "," + prods[k].to_decimal(16) + "\n";
    }
    emit_text(cfg, body);
}

/* ------------------------------------------------------------ partition -- */

struct PartitionArgs {
    long N = 1;
    long L = 1;
    std::string method = "wronskian";
    long n_from = 1;
    long n_to = 1;
    long step = 1;
    long jobs = 1;
};

void run_partition_exact(const RunConfig& cfg, const PartitionArgs& a) {
    qasym::QContext ctx = make_run_context(cfg);
    qasym::PartitionResult r = qasym::partition_exact(
        ctx, qasym::make_partition_spec(a.N, a.L), qasym::partition_method_from_string(a.method));
    emit_scalar(cfg, ctx, r.raw);
}

void run_partition_predict(const RunConfig& cfg, const PartitionArgs& a) {
    qasym::QContext ctx = make_run_context(cfg);
    emit_scalar(cfg, ctx, qasym::predicted_scaled(ctx, qasym::make_partition_spec(a.N, a.L)));
}

void run_partition_converge(const RunConfig& cfg, const PartitionArgs& a) {
    qasym::QContext ctx = make_run_context(cfg);
    if (a.n_from < 1 || a.n_to < a.n_from || a.step < 1)
        throw std::invalid_argument("require 1 <= --N-from <= --N-to and --step >= 1");
    std::vector<long> Ns;
    for (long N = a.n_from; N <= a.n_to; N += a.step) Ns.push_back(N);
    std::vector<qasym::ConvergenceRow> rows = qasym::convergence_table(
        ctx, a.L, Ns, qasym::partition_method_from_string(a.method), a.jobs);

    if (cfg.format == "json") {
        nlohmann::json jrows = nlohmann::json::array();
        for (const qasym::ConvergenceRow& r : rows) {
            jrows.push_back({{"N", r.N},
                             {"parity", r.parity},
                             {"scaled_exact", r.scaled_exact.to_decimal(16)},
                             {"predicted", r.predicted.to_decimal(16)},
                             {"ratio", r.ratio.to_decimal(16)},
                             {"abs_err", r.abs_err.to_decimal(16)}});
        }
        emit_json(cfg, {{"rows", jrows}});
        return;
    }
    std::string body = "N,parity,scaled_exact,predicted,ratio,abs_err\n";
    for (const qasym::ConvergenceRow& r : rows) {
        body += std::to_string(r.N) + "," + std::to_string(r.parity) + "," +
                r.scaled_exact.to_decimal(16) + "," + r.predicted.to_decimal(16) + "," +
                r.ratio.to_decimal(16) + "," + r.abs_err.to_decimal(16) + "\n";
    }
    emit_text(cfg, body);
    if (!cfg.output.empty()) {
        // Companion gnuplot-ready columns (N, |ratio-1|) next to the CSV.
        std::string dat_path = cfg.output;
        std::size_t dot = dat_path.find_last_of('.');
        dat_path = (dot == std::string::npos ? dat_path : dat_path.substr(0, dot)) + ".dat";
        std::string dat = config_comment(cfg) + "\n# N abs_err\n";
        for (const qasym::ConvergenceRow& r : rows)
            dat += std::to_string(r.N) + " " + r.abs_err.to_decimal(16) + "\n";
        write_file(dat_path, dat);
    }
}

/* ----------------------------------------------------------- asym check -- */

struct AsymArgs {
    std::string family;
    std::string alpha = "0";
    long n = 1;
    unsigned j = 0;
    std::string regime;
    std::string y;
    double t = 0.0;
    bool has_t = false;
    double l = 0.5;
    double delta = 0.0;
};

void run_asym_check(const RunConfig& cfg, const AsymArgs& a) {
    qasym::QContext ctx = make_run_context(cfg);
    qasym::CoefficientFamily fam = qasym::family_by_name(a.family, a.alpha);
    qasym::ScaledReal y = ctx.parse(a.y);
    qasym::QPolynomial poly = qasym::build_family_poly(ctx, fam, a.n);

    qasym::ScaledReal x = ctx.zero();
    qasym::AsymptoticEstimate est;
    if (a.regime == "osc") {
        qasym::AsymptoticWindow w =
            qasym::make_window(a.n, a.l, a.delta, y.abs().to_double());
        x = ctx.q_power(-2 * w.m) * y;
        est = qasym::oscillatory_estimate(ctx, fam, a.n, a.j, w, y);
    } else if (a.regime == "right") {
        if (!a.has_t) throw std::invalid_argument("--t is required for regime right");
        x = ctx.q_power_real(ctx.real(static_cast<double>(a.n) * a.t)) * y;
        est = qasym::right_tail_estimate(ctx, fam, qasym::right_tail_sequence(ctx, fam), a.n,
                                         a.j, a.t, y, a.delta);
    } else {
        if (!a.has_t) throw std::invalid_argument("--t is required for regime left");
        x = ctx.q_power_real(ctx.real(static_cast<double>(a.n) * a.t)) * y;
        est = qasym::left_tail_estimate(ctx, fam, qasym::left_tail_sequence(ctx, fam), a.n, a.j,
                                        a.t, y, a.delta);
    }
    qasym::ScaledReal exact = qasym::eval_pnj(ctx, poly, a.j, x);
    qasym::ScaledReal deviation = (exact - est.value).abs();
    // Arithmetic-roundoff slack: the certified bound covers truncation error,
    // not the finite-precision evaluation of the two compared quantities.
    qasym::ScaledReal slack =
        (exact.abs() + est.value.abs() + ctx.one()).mul_2si(-(ctx.mantissa_bits() - 16));

    if (cfg.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        rows.push_back({{"exact", exact.to_decimal(16)},
                        {"estimate", est.value.to_decimal(16)},
                        {"error_bound", est.error_bound.to_decimal(16)},
                        {"deviation", deviation.to_decimal(16)},
                        {"regime", est.regime}});
        emit_json(cfg, {{"rows", rows}});
    } else {
        std::string body = "exact,estimate,error_bound,deviation\n" + exact.to_decimal(16) +
                           "," + est.value.to_decimal(16) + "," +
                           est.error_bound.to_decimal(16) + "," + deviation.to_decimal(16) +
                           "\n";
        emit_text(cfg, body);
    }
    if (deviation > est.error_bound + slack)
        throw qasym::numeric_error("asym check: deviation exceeds the certified error bound");
}

/* ------------------------------------------------------------- selftest -- */

struct SuiteResult {
    std::string name;
    int instances = 0;
    double max_rel = 0.0;
    bool pass = true;
};

double sym_rel(const qasym::ScaledReal& a, const qasym::ScaledReal& b) {
    qasym::ScaledReal scale = std::max(a.abs(), b.abs());
    if (scale.is_zero()) return 0.0;
    return ((a - b) / scale).abs().to_double();
}

void run_selftest(const RunConfig& cfg) {
    qasym::QContext ctx = make_run_context(cfg);
    double tol = 10.0 * ctx.tail_tol();
    std::mt19937 rng(20240801u);
    auto uni = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    std::vector<SuiteResult> suites;

    {  // bilateral series vs q-Pochhammer triple product
        SuiteResult s{"triple-product", 20, 0.0, true};
        qasym::QContext cs = ctx.sqrt_base();
        for (int i = 0; i < 20; ++i) {
            qasym::ScaledReal z = ctx.real(uni(0.2, 2.5));
            s.max_rel = std::max(
                s.max_rel, sym_rel(qasym::triple_product_F(ctx, z), qasym::theta(cs, z)));
        }
        s.pass = s.max_rel < tol;
        suites.push_back(s);
    }
    {  // theta(q^2 z) = q^{-1} z^{-1} theta(z)
        SuiteResult s{"quasi-periodicity", 20, 0.0, true};
        for (int i = 0; i < 20; ++i) {
            qasym::ScaledReal z = ctx.real((i % 2 ? 1.0 : -1.0) * uni(0.3, 3.0));
            qasym::ScaledReal lhs = qasym::theta(ctx, ctx.q_power(2) * z);
            qasym::ScaledReal rhs = qasym::theta(ctx, z) / (ctx.q() * z);
            s.max_rel = std::max(s.max_rel, sym_rel(lhs, rhs));
        }
        s.pass = s.max_rel < tol;
        suites.push_back(s);
    }
    {  // (x;q)_n = sum_k [n k] q^{k(k-1)/2} (-x)^k
        SuiteResult s{"q-binomial-theorem", 20, 0.0, true};
        for (int i = 0; i < 20; ++i) {
            long n = 1 + static_cast<long>(uni(0.0, 24.0));
            qasym::ScaledReal x = ctx.real(uni(-2.0, 2.0));
            qasym::ScaledReal sum = ctx.zero();
            for (long k = 0; k <= n; ++k)
                sum += qasym::gauss_binomial(ctx, n, k) * ctx.q_half_power(k * (k - 1)) *
                       (-x).pow_si(k);
            s.max_rel = std::max(s.max_rel, sym_rel(qasym::q_pochhammer(ctx, x, n), sum));
        }
        s.pass = s.max_rel < tol;
        suites.push_back(s);
    }
    {  // F(q^{-m} u) = F(u) q^{-m^2/2} u^m
        SuiteResult s{"shift-identity", 20, 0.0, true};
        for (int i = 0; i < 20; ++i) {
            long m = static_cast<long>(uni(-5.0, 6.0));
            qasym::ScaledReal u = ctx.real(uni(0.2, 2.5));
            qasym::ScaledReal lhs = qasym::triple_product_F(ctx, ctx.q_half_power(-2 * m) * u);
            qasym::ScaledReal rhs =
                qasym::triple_product_F(ctx, u) * ctx.q_half_power(-m * m) * u.pow_si(m);
            s.max_rel = std::max(s.max_rel, sym_rel(lhs, rhs));
        }
        s.pass = s.max_rel < tol;
        suites.push_back(s);
    }
    {  // S_n(q^{-2n-1}/x) = q^{-n^2-n/2} (-x)^{-n} S_n(x)
        SuiteResult s{"sw-reflection", 20, 0.0, true};
        for (int i = 0; i < 20; ++i) {
            long n = 1 + static_cast<long>(uni(0.0, 12.0));
            qasym::ScaledReal x = ctx.real(-uni(0.25, 4.0));
            qasym::QPolynomial sn = qasym::sw_monic_poly(ctx, n);
            qasym::ScaledReal lhs =
                qasym::eval_poly(ctx, sn, ctx.q_power(-2 * n - 1) / x);
            qasym::ScaledReal rhs = ctx.q_half_power(-(2 * n * n + n)) * (-x).pow_si(-n) *
                                    qasym::eval_poly(ctx, sn, x);
            s.max_rel = std::max(s.max_rel, sym_rel(lhs, rhs));
        }
        s.pass = s.max_rel < tol;
        suites.push_back(s);
    }
    {  // h_n(sinh xi) = (-1)^n q^{n^2+n/2} e^{n xi} S_n(q^{-n-1/2} e^{-2 xi})
        SuiteResult s{"hermite-sw-bridge", 20, 0.0, true};
        for (int i = 0; i < 20; ++i) {
            long n = 1 + static_cast<long>(uni(0.0, 10.0));
            qasym::ScaledReal xi = ctx.real(uni(-1.5, 1.5));
            qasym::ScaledReal lhs = qasym::q_hermite_eval(ctx, n, xi);
            qasym::ScaledReal arg =
                ctx.q_half_power(-2 * n - 1) * (ctx.integer(-2) * xi).exp();
            qasym::ScaledReal rhs = ctx.q_half_power(2 * n * n + n) *
                                    (ctx.integer(n) * xi).exp() *
                                    qasym::eval_poly(ctx, qasym::sw_monic_poly(ctx, n), arg);
            if (n % 2 == 1) rhs = -rhs;
            s.max_rel = std::max(s.max_rel, sym_rel(lhs, rhs));
        }
        s.pass = s.max_rel < tol;
        suites.push_back(s);
    }

    std::string body;
    int passed = 0;
    for (const SuiteResult& s : suites) {
        char line[160];
        std::snprintf(line, sizeof(line), "%s %-20s %d instances  max_rel %.1e\n",
                      s.pass ? "PASS" : "FAIL", s.name.c_str(), s.instances, s.max_rel);
        body += line;
        if (s.pass) ++passed;
    }
    body += "selftest: " + std::to_string(passed) + "/" + std::to_string(suites.size()) +
            " suites passed\n";
    emit_text(cfg, body);
    if (passed != static_cast<int>(suites.size()))
        throw qasym::numeric_error("selftest: identity suite failure");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-series asymptotics toolkit: theta functions, q-orthogonal polynomials, "
                 "partition determinants, zero symmetry, asymptotic certificates"};
    app.set_version_flag("--version", kArtifactVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    ThetaArgs theta_args;
    PolyArgs poly_args;
    PartitionArgs part_args;
    AsymArgs asym_args;

    CLI::App* theta_cmd = app.add_subcommand("theta", "evaluate the theta series X_{j,m}(z)");
    add_common_options(theta_cmd, cfg);
    theta_cmd->add_option("--z", theta_args.z, "argument z (decimal literal)")->required();
    theta_cmd->add_option("--j", theta_args.j, "derivative order j");
    theta_cmd->add_option("--m", theta_args.m, "lattice shift m");
    theta_cmd->callback([&] {
        cfg.subcommand = "theta";
        run_theta(cfg, theta_args);
    });

    CLI::App* poly_cmd = app.add_subcommand("poly", "q-orthogonal polynomial operations");
    poly_cmd->require_subcommand(1);
    CLI::App* poly_eval = poly_cmd->add_subcommand("eval", "evaluate a polynomial (or x^j P^(j))");
    add_common_options(poly_eval, cfg);
    poly_eval->add_option("--family", poly_args.family, "sw | qlaguerre | qhermite")
        ->required()
        ->check(CLI::IsMember({"sw", "qlaguerre", "qhermite"}));
    poly_eval->add_option("--n", poly_args.n, "degree")->required();
    poly_eval->add_option("--alpha", poly_args.alpha, "q-Laguerre parameter (decimal literal)")
        ->capture_default_str();
    poly_eval->add_option("--x", poly_args.x, "evaluation point (xi for qhermite)")->required();
    poly_eval->add_option("--j", poly_args.j, "derivative order for x^j P^(j)(x)");
    poly_eval->callback([&] {
        cfg.subcommand = "poly eval";
        run_poly_eval(cfg, poly_args);
    });
    CLI::App* poly_zeros = poly_cmd->add_subcommand("zeros", "locate all positive zeros");
    add_common_options(poly_zeros, cfg);
    poly_zeros->add_option("--family", poly_args.family, "sw | qlaguerre")
        ->required()
        ->check(CLI::IsMember({"sw", "qlaguerre"}));
    poly_zeros->add_option("--n", poly_args.n, "degree")->required();
    poly_zeros->add_option("--alpha", poly_args.alpha, "q-Laguerre parameter (decimal literal)")
        ->capture_default_str();
    poly_zeros->add_flag("--paper-table", poly_args.paper_table,
                         "emit the published-format rounded product list");
    poly_zeros->callback([&] {
        cfg.subcommand = "poly zeros";
        run_poly_zeros(cfg, poly_args);
    });

    CLI::App* part_cmd = app.add_subcommand("partition", "partition function computations");
    part_cmd->require_subcommand(1);
    CLI::App* part_exact = part_cmd->add_subcommand("exact", "exact Z via determinant routes");
    add_common_options(part_exact, cfg);
    part_exact->add_option("--N", part_args.N, "matrix size N")->required();
    part_exact->add_option("--L", part_args.L, "level count L")->required();
    part_exact->add_option("--method", part_args.method, "wronskian | detS | sumL1")
        ->check(CLI::IsMember({"wronskian", "detS", "sumL1"}))
        ->capture_default_str();
    part_exact->callback([&] {
        cfg.subcommand = "partition exact";
        run_partition_exact(cfg, part_args);
    });
    CLI::App* part_pred = part_cmd->add_subcommand("predict", "theta-determinant limit value");
    add_common_options(part_pred, cfg);
    part_pred->add_option("--N", part_args.N, "matrix size N (fixes the parity)")->required();
    part_pred->add_option("--L", part_args.L, "level count L")->required();
    part_pred->callback([&] {
        cfg.subcommand = "partition predict";
        run_partition_predict(cfg, part_args);
    });
    CLI::App* part_conv = part_cmd->add_subcommand("converge", "scaled-exact vs predicted table");
    add_common_options(part_conv, cfg);
    part_conv->add_option("--L", part_args.L, "level count L")->required();
    part_conv->add_option("--N-from", part_args.n_from, "first N")->required();
    part_conv->add_option("--N-to", part_args.n_to, "last N")->required();
    part_conv->add_option("--step", part_args.step, "N stride")->capture_default_str();
    part_conv->add_option("--method", part_args.method, "wronskian | detS | sumL1")
        ->check(CLI::IsMember({"wronskian", "detS", "sumL1"}))
        ->capture_default_str();
    part_conv->add_option("--jobs", part_args.jobs, "parallel row workers")
        ->capture_default_str();
    part_conv->callback([&] {
        cfg.subcommand = "partition converge";
        run_partition_converge(cfg, part_args);
    });

    CLI::App* asym_cmd = app.add_subcommand("asym", "asymptotic estimates with error bounds");
    CLI::App* asym_check = asym_cmd->add_subcommand("check", "exact vs estimate vs bound");
    asym_cmd->require_subcommand(1);
    add_common_options(asym_check, cfg);
    asym_check->add_option("--family", asym_args.family, "ones | swigert | qlaguerre")
        ->required()
        ->check(CLI::IsMember({"ones", "swigert", "qlaguerre"}));
    asym_check->add_option("--alpha", asym_args.alpha, "q-Laguerre parameter (decimal literal)")
        ->capture_default_str();
    asym_check->add_option("--n", asym_args.n, "degree")->required();
    asym_check->add_option("--j", asym_args.j, "derivative order");
    asym_check->add_option("--regime", asym_args.regime, "osc | right | left")
        ->required()
        ->check(CLI::IsMember({"osc", "right", "left"}));
    asym_check->add_option("--y", asym_args.y, "scaling argument y (decimal literal)")
        ->required();
    asym_check->add_option("--t", asym_args.t, "tail exponent t (right: t >= 0, left: t <= -2)")
        ->each([&](const std::string&) { asym_args.has_t = true; });
    asym_check->add_option("--l", asym_args.l, "oscillatory window position l in (0,1)")
        ->capture_default_str();
    asym_check->add_option("--delta", asym_args.delta, "window margin (0 = per-regime default)");
    asym_check->callback([&] {
        cfg.subcommand = "asym check";
        run_asym_check(cfg, asym_args);
    });

    CLI::App* self_cmd = app.add_subcommand("selftest", "run the randomized identity suite");
    add_common_options(self_cmd, cfg);
    self_cmd->callback([&] {
        cfg.subcommand = "selftest";
        run_selftest(cfg);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    } catch (const qasym::numeric_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
