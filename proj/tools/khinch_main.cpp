// khinch: moment-comparison toolkit for Rademacher sums.
//
// Subcommands
//   constant  best L_p/L_q ratio constant in a given dimension
//   verify    machine-check one verification suite, JSON/CSV report
//   extremal  structured extrema on a power-sum constraint set
//   curve     samples of the shifted ratio x -> ||x+S_n||_p / ||x+S_n||_q
//
// Exit codes: 0 all checks passed, 1 at least one verification failure,
// 2 invalid input. Reports are byte-identical for identical flags + seed.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "khinch/constants.hpp"
#include "khinch/extremal.hpp"
#include "khinch/moments.hpp"
#include "khinch/report.hpp"
#include "khinch/sign_change.hpp"
#include "khinch/suites.hpp"

namespace {

using namespace khinch;

struct Settings {
    int coarse_grid = 512;
    double tail_eps = 1e-8;
    double xmax_cap = 65536.0;
    double golden_xtol = 1e-9;
    double conjecture_tol = 1e-6;
    int bruteforce_resolution = 48;
    int bruteforce_starts = 16;
    long binomial_cap = 4096;
    int enumeration_cap = 30;
    int gh_nodes = 128;
    int gl_nodes = 64;
    unsigned threads = 0;  // 0 = all hardware threads
    std::size_t max_cases = 200;
};

bool parse_kv(Settings& s, const std::string& key, const std::string& value) {
    try {
        if (key == "coarse_grid") s.coarse_grid = std::stoi(value);
        else if (key == "tail_eps") s.tail_eps = std::stod(value);
        else if (key == "xmax_cap") s.xmax_cap = std::stod(value);
        else if (key == "golden_xtol") s.golden_xtol = std::stod(value);
        else if (key == "conjecture_tol") s.conjecture_tol = std::stod(value);
        else if (key == "bruteforce_resolution") s.bruteforce_resolution = std::stoi(value);
        else if (key == "bruteforce_starts") s.bruteforce_starts = std::stoi(value);
        else if (key == "binomial_cap") s.binomial_cap = std::stol(value);
        else if (key == "enumeration_cap") s.enumeration_cap = std::stoi(value);
        else if (key == "gh_nodes") s.gh_nodes = std::stoi(value);
        else if (key == "gl_nodes") s.gl_nodes = std::stoi(value);
        else if (key == "threads") s.threads = static_cast<unsigned>(std::stoul(value));
        else if (key == "max_cases") s.max_cases = std::stoul(value);
        else return false;
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

void load_config(Settings& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not readable: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: missing '=' at " + path + ":" +
                                        std::to_string(lineno));
        auto trim = [](std::string v) {
            const auto b = v.find_first_not_of(" \t\r");
            const auto e = v.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!parse_kv(s, key, value))
            throw std::invalid_argument("config: unknown or malformed key '" + key + "' at " +
                                        path + ":" + std::to_string(lineno));
    }
}

ReducedOptions reduced_options(const Settings& s) {
    ReducedOptions o;
    o.coarse_grid = s.coarse_grid;
    o.tail_eps = s.tail_eps;
    o.xmax_cap = s.xmax_cap;
    o.golden_xtol = s.golden_xtol;
    o.conjecture_tol = s.conjecture_tol;
    o.binomial_cap = s.binomial_cap;
    return o;
}

BruteForceOptions brute_options(const Settings& s, std::uint64_t seed) {
    BruteForceOptions o;
    o.resolution = s.bruteforce_resolution;
    o.starts = s.bruteforce_starts;
    o.seed = seed;
    return o;
}

/// Deterministic timestamp: derived from SOURCE_DATE_EPOCH when set, empty
/// otherwise, so identical invocations render identical bytes.
std::string deterministic_timestamp() {
    const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
    if (!epoch || !*epoch) return "";
    char* end = nullptr;
    const long long t = std::strtoll(epoch, &end, 10);
    if (end == epoch) return "";
    std::time_t tt = static_cast<std::time_t>(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string constant_json(const ConstantEstimate& e) {
    std::string s = "{\n";
    s += "  \"p\": " + format_double(e.p) + ",\n";
    s += "  \"q\": " + format_double(e.q) + ",\n";
    s += "  \"dim\": " + std::to_string(e.dim) + ",\n";
    s += "  \"method\": \"" + e.method + "\",\n";
    s += "  \"value\": " + format_double(e.value) + ",\n";
    s += "  \"lower\": " + format_double(e.lower) + ",\n";
    s += "  \"upper\": " + format_double(e.upper) + ",\n";
    if (e.method == "reduced") {
        s += "  \"argmax_x\": " + format_double(e.argmax_x) + ",\n";
        s += "  \"conjecture_at_one\": " + std::string(e.conjecture_at_one ? "true" : "false") + ",\n";
        s += "  \"conjecture_distance\": " + format_double(e.conjecture_distance) + ",\n";
        s += "  \"reduction_exact\": " + std::string(e.reduction_exact ? "true" : "false") + ",\n";
    }
    s += "  \"argmax\": [";
    for (std::size_t i = 0; i < e.argmax_vector.size(); ++i)
        s += (i ? ", " : "") + format_double(e.argmax_vector[i]);
    s += "]\n}\n";
    return s;
}

std::string constant_text(const ConstantEstimate& e) {
    std::string s = "C_{" + format_double(e.p) + "," + format_double(e.q) + "," +
                    std::to_string(e.dim) + "} (" + e.method + ")\n";
    s += "value   = " + format_double(e.value) + "\n";
    s += "bracket = [" + format_double(e.lower) + ", " + format_double(e.upper) + "]\n";
    s += "argmax  = " + suites::detail::vec_str(e.argmax_vector) + "\n";
    if (e.method == "reduced") {
        s += "argmax_x = " + format_double(e.argmax_x) +
             "  |x*-1| = " + format_double(e.conjecture_distance) +
             "  sup at x=1: " + (e.conjecture_at_one ? "yes" : "no") + "\n";
        if (!e.reduction_exact)
            s += "note: reduction identity unproven for p in (4,5); value is heuristic\n";
        if (e.q == 4.0)
            s += "ceiling gamma_p/gamma_4 = " +
                 format_double(gaussian_norm(e.p) / gaussian_norm(4.0)) + "\n";
    }
    return s;
}

std::string extremal_text(const ConstraintSpec& spec, const std::vector<double>& ps) {
    const auto plus = p_plus(spec);
    const auto minus = p_minus(spec);
    std::string s = "A_{alpha,beta}: n=" + std::to_string(spec.n) +
                    " alpha=" + format_double(spec.alpha) +
                    " beta^4=" + format_double(spec.beta4()) +
                    " gamma=" + format_double(spec.gamma()) + "\n";
    s += "P+ = " + suites::detail::vec_str(plus.vector()) + "\n";
    s += "P- = " + suites::detail::vec_str(minus.vector()) + "\n";
    for (double p : ps) {
        s += "p=" + format_double(p) +
             "  E|<P+,e>|^p = " + format_double(rademacher_moment(plus.weights(), p).value) +
             "  E|<P-,e>|^p = " + format_double(rademacher_moment(minus.weights(), p).value) + "\n";
    }
    return s;
}

std::string extremal_json(const ConstraintSpec& spec, const std::vector<double>& ps) {
    const auto plus = p_plus(spec);
    const auto minus = p_minus(spec);
    auto vec_json = [](const std::vector<double>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
        return s + "]";
    };
    std::string s = "{\n";
    s += "  \"n\": " + std::to_string(spec.n) + ",\n";
    s += "  \"alpha\": " + format_double(spec.alpha) + ",\n";
    s += "  \"beta4\": " + format_double(spec.beta4()) + ",\n";
    s += "  \"gamma\": " + format_double(spec.gamma()) + ",\n";
    s += "  \"p_plus\": " + vec_json(plus.vector()) + ",\n";
    s += "  \"p_minus\": " + vec_json(minus.vector()) + ",\n";
    s += "  \"moments\": [";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ", ";
        s += "{\"p\": " + format_double(ps[i]) +
             ", \"plus\": " + format_double(rademacher_moment(plus.weights(), ps[i]).value) +
             ", \"minus\": " + format_double(rademacher_moment(minus.weights(), ps[i]).value) + "}";
    }
    s += "]\n}\n";
    return s;
}

std::string curve_csv(const RatioCurve& c) {
    std::string s = "# n=" + std::to_string(c.n) + " p=" + format_double(c.p) +
                    " q=" + format_double(c.q) +
                    " points=" + std::to_string(c.samples.size()) + "\n";
    s += "x,f\n";
    for (const auto& [x, f] : c.samples) s += format_double(x) + "," + format_double(f) + "\n";
    return s;
}

std::string curve_json(const RatioCurve& c) {
    std::string s = "{\n  \"n\": " + std::to_string(c.n) + ",\n  \"p\": " + format_double(c.p) +
                    ",\n  \"q\": " + format_double(c.q) + ",\n  \"samples\": [\n";
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
        s += "    {\"x\": " + format_double(c.samples[i].first) +
             ", \"f\": " + format_double(c.samples[i].second) + "}";
        s += i + 1 < c.samples.size() ? ",\n" : "\n";
    }
    s += "  ]\n}\n";
    return s;
}

const char* kSuiteHelp =
    "Suites:\n"
    "  thm-cp4          C_{p,4,n} estimates stay below gamma_p/gamma_4, grow with n,\n"
    "                   and the equal-weights ratio brackets the ceiling from below\n"
    "  prop-x-oracle    1-D reduction sup_{x>=1} ||x+S_n||_p/||x+S_n||_4 vs sphere\n"
    "                   brute force (p in (4,5) measured, not asserted)\n"
    "  ko1              E|S|^p = (p-1) sum_i a_i^2 E|S_i|^{p-2}, i-th sign smoothed\n"
    "                   to uniform on [-1,1]\n"
    "  ko2              sum a_i^2 (1-2a_i^2/3)^3 <= (1-2/3 sum a_i^4)^2 on unit vectors\n"
    "  extremal         sampled constraint-set moments lie between the structured\n"
    "                   minimizer P- and maximizer P+\n"
    "  np-sign          CDF gap of |y+G| vs |CG| crosses zero exactly once; the\n"
    "                   normalized moment gap phi is zero at q and non-decreasing\n"
    "  x-gauss          ||y+G||_p/||y+G||_q is maximized at y = 0\n"
    "  stability        ||S||_p/||G||_p <= 1 - (1/6) sum a_i^4, plus the exact\n"
    "                   identity ||S||_4/gamma_4 = (1 - 2/3 sum a_i^4)^{1/4}\n"
    "  lower-bound      ||S_n/sqrt(n)||_p >= e^{-p/2n} gamma_p\n"
    "  doubling         ||S_{2n}/sqrt(2n)||_p <= e^{p/4n} ||S_n/sqrt(n)||_p\n"
    "  binomial-moment  E X^{p/2} <= (n/2)^{p/2} e^{p^2/4n}, X ~ Binomial(n,1/2)\n"
    "  interp-endpoints endpoint cases p=4 (equality) and p=8 of the power-sum\n"
    "                   interpolation bound\n";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"khinch: high-precision moment comparison for Rademacher sums"};
    app.require_subcommand(1);

    Settings settings;
    std::string config_path;
    if (const char* env = std::getenv("KHINCH_CONFIG"); env && *env) config_path = env;
    app.add_option("--config", config_path, "key=value precision profile (overrides defaults)");

    // constant
    auto* c_cmd = app.add_subcommand("constant", "Khintchine constant C_{p,q,dim}");
    double c_p = 4.0, c_q = 4.0;
    int c_dim = 2;
    std::string c_method = "auto", c_out, c_format = "text";
    std::uint64_t c_seed = 1;
    c_cmd->add_option("--p", c_p, "moment exponent p")->required();
    c_cmd->add_option("--q", c_q, "moment exponent q")->required();
    c_cmd->add_option("--dim", c_dim, "number of coefficients")->required();
    c_cmd->add_option("--method", c_method, "reduced | bruteforce | auto")
        ->check(CLI::IsMember({"reduced", "bruteforce", "auto"}));
    int flag_resolution = -1, flag_starts = -1;
    long long flag_threads = -1, flag_max_cases = -1;
    c_cmd->add_option("--seed", c_seed, "bruteforce restart seed");
    c_cmd->add_option("--resolution", flag_resolution, "bruteforce grid per axis");
    c_cmd->add_option("--starts", flag_starts, "bruteforce random restarts");
    c_cmd->add_option("--format", c_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    c_cmd->add_option("--out", c_out, "write result to file instead of stdout");

    // verify
    auto* v_cmd = app.add_subcommand("verify", "run one verification suite");
    v_cmd->footer(kSuiteHelp);
    std::string v_suite, v_out, v_format = "json";
    long v_samples = -1;
    std::uint64_t v_seed = 1;
    int v_max_n = -1, v_grid = 10000, v_dim_max = 14, v_s_grid = 33;
    long v_n_max = 1000;
    double v_tol = std::nan("");
    std::vector<double> v_ps, v_ys, v_qs;
    std::vector<int> v_dims;
    v_cmd->add_option("suite", v_suite, "suite name (see list below)")
        ->required()
        ->check(CLI::IsMember({"thm-cp4", "prop-x-oracle", "ko1", "ko2", "extremal", "np-sign",
                               "x-gauss", "stability", "lower-bound", "doubling",
                               "binomial-moment", "interp-endpoints"}));
    v_cmd->add_option("--samples", v_samples, "sample count (suite default if omitted)");
    v_cmd->add_option("--seed", v_seed, "RNG seed");
    v_cmd->add_option("--max-n", v_max_n, "max random vector dimension");
    v_cmd->add_option("--p", v_ps, "exponent grid override");
    v_cmd->add_option("--y", v_ys, "shift grid override");
    v_cmd->add_option("--q", v_qs, "q grid override");
    v_cmd->add_option("--dims", v_dims, "dimension grid override");
    v_cmd->add_option("--dim-max", v_dim_max, "max dimension (thm-cp4)");
    v_cmd->add_option("--grid", v_grid, "t-grid size (np-sign)");
    v_cmd->add_option("--s-grid", v_s_grid, "phi s-grid size (np-sign)");
    v_cmd->add_option("--n-max", v_n_max, "max n (binomial-moment)");
    v_cmd->add_option("--tol", v_tol, "tolerance override");
    v_cmd->add_option("--resolution", flag_resolution,
                      "bruteforce grid per axis (prop-x-oracle)");
    v_cmd->add_option("--threads", flag_threads, "worker pool size (0 = hardware)");
    v_cmd->add_option("--max-cases", flag_max_cases, "case rows rendered (failures always)");
    v_cmd->add_option("--format", v_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    v_cmd->add_option("--out", v_out, "write report to file instead of stdout");

    // extremal
    auto* e_cmd = app.add_subcommand("extremal", "structured extrema P+/P- on A_{alpha,beta}");
    double e_alpha = 1.0, e_beta = std::nan(""), e_beta4 = std::nan("");
    int e_n = 3;
    std::vector<double> e_ps = {5.0, 6.0};
    std::string e_out, e_format = "text";
    e_cmd->add_option("--alpha", e_alpha, "2nd-power-sum root (sum x^2 = alpha^2)")->required();
    e_cmd->add_option("--beta", e_beta, "4th-power-sum root (sum x^4 = beta^4)");
    e_cmd->add_option("--beta4", e_beta4, "4th power sum directly");
    e_cmd->add_option("--n", e_n, "dimension")->required();
    e_cmd->add_option("--p", e_ps, "exponents for the reported moments");
    e_cmd->add_option("--format", e_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    e_cmd->add_option("--out", e_out, "write result to file instead of stdout");

    // curve
    auto* g_cmd = app.add_subcommand("curve", "samples of f_n(x) = ||x+S_n||_p/||x+S_n||_q");
    long g_n = 1;
    double g_p = 6.0, g_q = 4.0, g_xmin = 1.0, g_xmax = 100.0;
    int g_points = 200;
    std::string g_out, g_format = "csv";
    g_cmd->add_option("--n", g_n, "number of unit steps in S_n")->required();
    g_cmd->add_option("--p", g_p, "numerator exponent")->required();
    g_cmd->add_option("--q", g_q, "denominator exponent")->required();
    g_cmd->add_option("--x-min", g_xmin, "left end of the x range");
    g_cmd->add_option("--x-max", g_xmax, "right end of the x range");
    g_cmd->add_option("--points", g_points, "sample count");
    g_cmd->add_option("--format", g_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    g_cmd->add_option("--out", g_out, "write samples to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) load_config(settings, config_path);
        // command-line flags win over the config profile
        if (flag_resolution > 0) settings.bruteforce_resolution = flag_resolution;
        if (flag_starts > 0) settings.bruteforce_starts = flag_starts;
        if (flag_threads >= 0) settings.threads = static_cast<unsigned>(flag_threads);
        if (flag_max_cases >= 0) settings.max_cases = static_cast<std::size_t>(flag_max_cases);

        if (c_cmd->parsed()) {
            std::string method = c_method;
            if (method == "auto") method = (c_q == 4.0 && c_p >= 4.0) ? "reduced" : "bruteforce";
            ConstantEstimate est;
            if (method == "reduced") {
                if (c_q != 4.0)
                    throw std::invalid_argument("constant: the reduced method requires q = 4");
                est = cp4_reduced(c_p, c_dim, reduced_options(settings));
            } else {
                est = cpq_bruteforce(c_p, c_q, c_dim, brute_options(settings, c_seed));
            }
            write_output(c_format == "json" ? constant_json(est) : constant_text(est), c_out);
            return 0;
        }

        if (e_cmd->parsed()) {
            double beta = e_beta;
            if (std::isnan(beta)) {
                if (std::isnan(e_beta4))
                    throw std::invalid_argument("extremal: need --beta or --beta4");
                if (e_beta4 <= 0.0) throw std::invalid_argument("extremal: beta4 must be positive");
                beta = std::pow(e_beta4, 0.25);
            }
            const ConstraintSpec spec{e_alpha, beta, e_n};
            spec.validate();
            write_output(e_format == "json" ? extremal_json(spec, e_ps)
                                            : extremal_text(spec, e_ps),
                         e_out);
            return 0;
        }

        if (g_cmd->parsed()) {
            const RatioCurve curve =
                make_ratio_curve(g_n, g_p, g_q, g_xmin, g_xmax, g_points, settings.binomial_cap);
            write_output(g_format == "json" ? curve_json(curve) : curve_csv(curve), g_out);
            return 0;
        }

        if (v_cmd->parsed()) {
            const unsigned threads = resolve_threads(settings.threads);
            VerificationReport rep;
            if (v_suite == "thm-cp4") {
                rep = suites::thm_cp4(v_ps.empty() ? std::vector<double>{4.5, 5.0, 6.0, 8.0} : v_ps,
                                      v_dim_max, std::isnan(v_tol) ? 1e-9 : v_tol, 1e-10,
                                      reduced_options(settings), threads);
            } else if (v_suite == "prop-x-oracle") {
                rep = suites::prop_x_oracle(
                    v_ps.empty() ? std::vector<double>{5.0, 6.0, 8.0} : v_ps,
                    {4.25, 4.5, 4.75}, v_dims.empty() ? std::vector<int>{2, 3, 4} : v_dims,
                    std::isnan(v_tol) ? 1e-4 : v_tol, brute_options(settings, v_seed),
                    reduced_options(settings), threads);
            } else if (v_suite == "ko1") {
                rep = suites::ko1(v_samples < 0 ? 1000 : v_samples, v_max_n < 0 ? 12 : v_max_n,
                                  2.0, 10.0, std::isnan(v_tol) ? 1e-8 : v_tol, v_seed, threads);
            } else if (v_suite == "ko2") {
                rep = suites::ko2(v_samples < 0 ? 100000 : v_samples,
                                  v_max_n < 0 ? 10 : v_max_n,
                                  std::isnan(v_tol) ? 1e-12 : v_tol, v_seed, threads);
            } else if (v_suite == "extremal") {
                rep = suites::extremal(v_samples < 0 ? 10000 : static_cast<int>(v_samples),
                                       v_ps.empty() ? std::vector<double>{5.0, 6.0} : v_ps,
                                       v_seed, std::isnan(v_tol) ? 1e-10 : v_tol, threads);
            } else if (v_suite == "np-sign") {
                rep = suites::np_sign(v_ys.empty() ? std::vector<double>{0.1, 0.5, 1.0, 2.0, 5.0}
                                                   : v_ys,
                                      v_qs.empty() ? std::vector<double>{2.0, 4.0} : v_qs,
                                      v_grid, std::isnan(v_tol) ? 1e-10 : v_tol, v_s_grid);
            } else if (v_suite == "x-gauss") {
                std::vector<std::pair<double, double>> pqs = {
                    {5.0, 4.0}, {6.0, 4.0}, {8.0, 4.0}, {6.0, 2.0}};
                if (!v_ps.empty()) {
                    pqs.clear();
                    for (double p : v_ps)
                        for (double q : v_qs.empty() ? std::vector<double>{4.0} : v_qs)
                            pqs.emplace_back(p, q);
                }
                rep = suites::x_gauss(v_ys.empty()
                                          ? std::vector<double>{0.0, 0.1, 0.5, 1.0, 2.0, 5.0}
                                          : v_ys,
                                      pqs, std::isnan(v_tol) ? 1e-10 : v_tol);
            } else if (v_suite == "stability") {
                rep = suites::stability(v_samples < 0 ? 10000 : v_samples,
                                        v_ps.empty() ? std::vector<double>{4, 5, 6, 8, 10} : v_ps,
                                        v_max_n < 0 ? 12 : v_max_n, v_seed,
                                        std::isnan(v_tol) ? 1e-12 : v_tol, threads);
            } else if (v_suite == "lower-bound") {
                rep = suites::lower_bound(suites::default_doubling_ns(),
                                          v_ps.empty() ? std::vector<double>{3, 4, 6, 9} : v_ps,
                                          threads);
            } else if (v_suite == "doubling") {
                rep = suites::doubling(suites::default_doubling_ns(),
                                       v_ps.empty() ? std::vector<double>{3, 4, 6, 9} : v_ps,
                                       threads);
            } else if (v_suite == "binomial-moment") {
                rep = suites::binomial_moment(v_n_max,
                                              v_ps.empty() ? std::vector<double>{3, 4, 6, 9}
                                                           : v_ps,
                                              threads);
            } else if (v_suite == "interp-endpoints") {
                rep = suites::interp_endpoints(v_samples < 0 ? 10000 : v_samples,
                                               v_max_n < 0 ? 10 : v_max_n, v_seed,
                                               std::isnan(v_tol) ? 1e-12 : v_tol, threads);
            }
            rep.add_meta("timestamp", deterministic_timestamp());
            write_output(v_format == "csv" ? rep.to_csv(settings.max_cases)
                                           : rep.to_json(settings.max_cases),
                         v_out);
            return rep.passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
