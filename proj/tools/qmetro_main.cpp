// qmetro command-line front end. Talks to the library strictly through the
// C API; emits CSV/TSV tables and plain reports suitable for plotting.

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmetro/qmetro.h"

#include "acceptance.hpp"

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

// exit codes: 0 success, 1 solver failure, 2 validation/usage failure
int exit_code_for(qm_status s) {
    switch (s) {
        case QM_E_VALIDATION:
        case QM_E_DIMENSION:
        case QM_E_NOT_PSD:
        case QM_E_DERIVATIVE:
        case QM_E_DOMAIN:
        case QM_E_BAD_ARGUMENT:
            return 2;
        default:
            return 1;
    }
}

[[noreturn]] void die(qm_status s, const std::string& where) {
    std::fprintf(stderr, "error: %s: %s\n", where.c_str(), qm_last_error());
    std::exit(exit_code_for(s));
}

[[noreturn]] void die_usage(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    std::exit(2);
}

void check(qm_status s, const char* where) {
    if (s != QM_OK) die(s, where);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);  // renders "inf"/"nan" as such
    return buf;
}

double strict_double(const std::string& s, const char* what) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        die_usage(std::string(what) + ": cannot parse number '" + s + "'");
    return v;
}

// radians, or fractions of pi written like "pi", "-pi/4", "3pi/8", "2pi"
double parse_angle(const std::string& raw, const char* what) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto pos = s.find("pi");
    if (pos == std::string::npos) return strict_double(s, what);
    double sign = 1.0;
    size_t start = 0;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        if (s[0] == '-') sign = -1.0;
        start = 1;
        pos = s.find("pi", start);
        if (pos == std::string::npos)
            die_usage(std::string(what) + ": cannot parse angle '" + raw + "'");
    }
    std::string coeff = s.substr(start, pos - start);
    std::string rest = s.substr(pos + 2);
    double num = coeff.empty() ? 1.0 : strict_double(coeff, what);
    double den = 1.0;
    if (!rest.empty()) {
        if (rest[0] != '/')
            die_usage(std::string(what) + ": cannot parse angle '" + raw + "'");
        den = strict_double(rest.substr(1), what);
        if (den == 0.0) die_usage(std::string(what) + ": zero denominator");
    }
    return sign * num * kPi / den;
}

struct Sink {
    std::FILE* f = stdout;
    bool owned = false;
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            f = std::fopen(path.c_str(), "wb");
            if (!f) die_usage("cannot open output file '" + path + "'");
            owned = true;
        }
    }
    ~Sink() {
        if (owned) std::fclose(f);
    }
    void line(const std::string& s) {
        std::fputs(s.c_str(), f);
        std::fputc('\n', f);
    }
};

char sep_for(const std::string& format) {
    if (format == "csv") return ',';
    if (format == "tsv") return '\t';
    die_usage("unknown --format '" + format + "' (expected csv or tsv)");
}

std::string join(const std::vector<std::string>& cells, char sep) {
    std::string out;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out += sep;
        out += cells[i];
    }
    return out;
}

// ---- problem sources ----------------------------------------------------

std::vector<double> mat_from_json(const json& j, int d, const std::string& name) {
    if (!j.is_array() || static_cast<int>(j.size()) != d)
        die_usage(name + ": expected " + std::to_string(d) + " rows");
    std::vector<double> buf(static_cast<size_t>(2) * d * d);
    for (int i = 0; i < d; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            die_usage(name + ": row " + std::to_string(i) + " must have " +
                      std::to_string(d) + " entries");
        for (int k = 0; k < d; ++k) {
            const json& e = row[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                die_usage(name + ": entry (" + std::to_string(i) + "," +
                          std::to_string(k) + ") must be a [re, im] pair");
            buf[2 * (static_cast<size_t>(i) * d + k)] = e[0].get<double>();
            buf[2 * (static_cast<size_t>(i) * d + k) + 1] = e[1].get<double>();
        }
    }
    return buf;
}

qm_problem* problem_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) die_usage("cannot open problem file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        die_usage(path + ": JSON parse failure: " + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
        die_usage(path + ": expected an object with integer field 'dim'");
    int d = j["dim"].get<int>();
    if (d < 2) die_usage(path + ": dim must be at least 2");
    for (const char* key : {"rho", "drho1", "drho2"})
        if (!j.contains(key)) die_usage(path + ": missing field '" + std::string(key) + "'");
    std::vector<double> rho = mat_from_json(j["rho"], d, "rho");
    std::vector<double> d1 = mat_from_json(j["drho1"], d, "drho1");
    std::vector<double> d2 = mat_from_json(j["drho2"], d, "drho2");
    qm_problem* p = nullptr;
    qm_status s = qm_problem_create(d, rho.data(), d1.data(), d2.data(), &p);
    if (s != QM_OK) die(s, path);
    return p;
}

struct ProblemSource {
    std::string file;
    std::string r, theta, phi;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--file", file, "problem file (JSON, see README)");
        cmd->add_option("--r", r, "rotation scenario Bloch radius in (0,1]");
        cmd->add_option("--theta", theta, "rotation axis polar angle (radians or pi/4-style)");
        cmd->add_option("--phi", phi, "rotation axis azimuthal angle");
    }

    qm_problem* load() const {
        bool rot = !r.empty() || !theta.empty() || !phi.empty();
        if (!file.empty() && rot)
            die_usage("pass either --file or the --r/--theta/--phi triple, not both");
        if (!file.empty()) return problem_from_file(file);
        if (r.empty() || theta.empty() || phi.empty())
            die_usage("need a problem: --file, or all of --r/--theta/--phi");
        qm_problem* p = nullptr;
        qm_status s = qm_problem_rotations(strict_double(r, "--r"),
                                           parse_angle(theta, "--theta"),
                                           parse_angle(phi, "--phi"), &p);
        if (s != QM_OK) die(s, "rotations scenario");
        return p;
    }
};

struct WeightChoice {
    double scalar = 1.0;
    std::string matrix_json;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--weight", scalar,
                        "scalar weight w, W = diag(w, 2-w); default 1 (identity)");
        cmd->add_option("--weight-json", matrix_json,
                        "full weight matrix as JSON [[w11,w12],[w12,w22]]");
    }

    qm_weight resolve() const {
        if (!matrix_json.empty()) {
            json j;
            try {
                j = json::parse(matrix_json);
            } catch (const std::exception& e) {
                die_usage(std::string("--weight-json: parse failure: ") + e.what());
            }
            if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
                !j[1].is_array() || j[1].size() != 2)
                die_usage("--weight-json: expected [[w11,w12],[w12,w22]]");
            double w11 = j[0][0].get<double>(), w12 = j[0][1].get<double>();
            double w21 = j[1][0].get<double>(), w22 = j[1][1].get<double>();
            if (w12 != w21) die_usage("--weight-json: matrix must be symmetric");
            qm_weight w;
            w.w11 = w11;
            w.w12 = w12;
            w.w22 = w22;
            return w;
        }
        if (!(scalar > 0.0 && scalar < 2.0))
            die_usage("--weight must lie strictly inside (0, 2)");
        return qm_weight_scalar(scalar);
    }
};

// ---- deterministic index-ordered batches --------------------------------

// fn(i, row) -> true on success; rows are assembled in index order no matter
// how many workers ran, so serial and parallel output are byte-identical.
template <typename Fn>
int run_batch(int count, int threads, std::vector<std::string>& rows, Fn fn) {
    rows.assign(count, {});
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    threads = std::min(threads, count);
    std::atomic<int> next{0}, failures{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            if (!fn(i, rows[i])) failures.fetch_add(1);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return failures.load();
}

// ---- subcommands ---------------------------------------------------------

struct BoundsCmd {
    ProblemSource src;
    WeightChoice weight;
    std::string out, format = "csv";

    int run() {
        char sep = sep_for(format);
        qm_problem* p = src.load();
        int d = qm_problem_dim(p);
        double qfi[4];
        check(qm_sld_qfi(p, qfi), "sld_qfi");
        double ct;
        check(qm_incompatibility(p, &ct), "incompatibility");
        qm_weight w = weight.resolve();

        double sld;
        check(qm_sld_crb(p, &w, &sld), "sldcrb");

        double ncrb;
        qm_bound_result nres{};
        bool numeric_ncrb = d != 2;
        if (d == 2) {
            check(qm_ncrb_qubit(p, &w, &ncrb), "ncrb");
        } else {
            check(qm_ncrb_general(p, &w, nullptr, &nres), "ncrb");
            ncrb = nres.value;
        }

        qm_bound_result hres{};
        check(qm_hcrb_general(p, &w, nullptr, &hres), "hcrb");
        double hcrb = hres.value;

        qm_lwb_result lres{};
        check(qm_lwb(qfi[0], qfi[3], ct, &lres), "lwb");

        Sink sink(out);
        sink.line(join({"sldcrb", "ncrb", "hcrb", "lwb", "c_tilde"}, sep));
        sink.line(join({fmt(sld), fmt(ncrb), fmt(hcrb), fmt(lres.value), fmt(ct)}, sep));

        // diagnostics go to stderr so stdout stays machine-readable
        std::fprintf(stderr, "# dim %d  qfi [%s %s; %s %s]  weight [%s %s; %s %s]\n", d,
                     fmt(qfi[0]).c_str(), fmt(qfi[1]).c_str(), fmt(qfi[2]).c_str(),
                     fmt(qfi[3]).c_str(), fmt(w.w11).c_str(), fmt(w.w12).c_str(),
                     fmt(w.w12).c_str(), fmt(w.w22).c_str());
        if (numeric_ncrb)
            std::fprintf(stderr,
                         "# ncrb solver: %d iterations, mu %g, residual %g, converged %d\n",
                         nres.iterations, nres.final_mu, nres.constraint_residual,
                         nres.converged);
        std::fprintf(stderr,
                     "# hcrb solver: %d iterations, mu %g, residual %g, converged %d\n",
                     hres.iterations, hres.final_mu, hres.constraint_residual,
                     hres.converged);
        static const char* kPathNames[] = {"closed c~=1", "closed c~=0", "numeric"};
        std::fprintf(stderr,
                     "# lwb (identity weight): path %s, optimizer (%s, %s), kkt %g\n",
                     kPathNames[lres.path], fmt(lres.v1).c_str(), fmt(lres.v2).c_str(),
                     lres.kkt_residual);
        qm_problem_free(p);
        return 0;
    }
};

struct CurveCmd {
    ProblemSource src;
    std::string kind;
    int points = 101;
    double v1_min = 0.0, v1_max = 0.0;  // 0 = derive from the problem
    double lambda_min = 0.25, lambda_max = 4.0;
    std::string out, format = "csv";

    std::vector<double> linear_grid(double lo, double hi) const {
        std::vector<double> g(points);
        if (points == 1) {
            g[0] = lo;
            return g;
        }
        for (int i = 0; i < points; ++i)
            g[i] = lo + (hi - lo) * (static_cast<double>(i) / (points - 1));
        return g;
    }

    int run() {
        char sep = sep_for(format);
        if (points < 1) die_usage("--points must be positive");
        if (v1_min != 0.0 && v1_max != 0.0 && v1_max < v1_min)
            die_usage("--v1-max must be >= --v1-min");
        qm_problem* p = src.load();
        double qfi[4];
        check(qm_sld_qfi(p, qfi), "sld_qfi");

        Sink sink(out);
        sink.line(join({"v1", "v2"}, sep));

        if (kind == "nagaoka") {
            double det = qfi[0] * qfi[3] - qfi[1] * qfi[2];
            double a = det > 0 ? qfi[3] / det : 0.0;
            double lo = v1_min != 0.0 ? v1_min : 1.125 * a;
            double hi = v1_max != 0.0 ? v1_max : 9.0 * a;
            std::vector<double> grid = linear_grid(lo, hi), v2(points);
            check(qm_nagaoka_curve(p, grid.data(), points, v2.data()), "nagaoka curve");
            for (int i = 0; i < points; ++i)
                sink.line(join({fmt(grid[i]), fmt(v2[i])}, sep));
        } else if (kind == "lwur") {
            double ct;
            check(qm_incompatibility(p, &ct), "incompatibility");
            double f11 = qfi[0], f22 = qfi[3];
            if (f11 <= 0.0 || f22 <= 0.0)
                die_usage("lwur curve needs positive diagonal QFI entries");
            double lo = v1_min != 0.0 ? v1_min : 1.0 / f11;
            double hi = v1_max != 0.0
                            ? v1_max
                            : (ct <= 0.999 ? 1.5 / ((1.0 - ct * ct) * f11) : 16.0 / f11);
            if (hi <= lo) hi = 2.0 * lo;
            std::vector<double> grid = linear_grid(lo, hi), v1(points), v2(points);
            std::vector<int> dropped(points);
            check(qm_lwur_curve(f11, f22, ct, grid.data(), points, v1.data(), v2.data(),
                                dropped.data()),
                  "lwur curve");
            int skipped = 0;
            for (int i = 0; i < points; ++i) {
                if (dropped[i]) {
                    ++skipped;
                    continue;
                }
                sink.line(join({fmt(v1[i]), fmt(v2[i])}, sep));
            }
            if (skipped)
                std::fprintf(stderr, "# %d grid points outside the curve domain\n", skipped);
        } else if (kind == "sld-envelope" || kind == "ncrb-envelope") {
            if (points < 2) die_usage("envelope kinds need --points >= 2");
            std::vector<double> wgrid(points);
            check(qm_default_envelope_weights(points, lambda_min, lambda_max, wgrid.data()),
                  "envelope weights");
            std::vector<double> v1(points - 1), v2(points - 1);
            int npts = 0;
            check(qm_bound_envelope(p, kind == "sld-envelope" ? 0 : 1, wgrid.data(), points,
                                    v1.data(), v2.data(), &npts),
                  "bound envelope");
            for (int i = 0; i < npts; ++i)
                sink.line(join({fmt(v1[i]), fmt(v2[i])}, sep));
        } else {
            die_usage("unknown --kind '" + kind +
                      "' (expected nagaoka, lwur, sld-envelope, ncrb-envelope)");
        }
        qm_problem_free(p);
        return 0;
    }
};

struct RandomProblemsCmd {
    int dim = 2;
    int count = 1000;
    uint64_t seed = 0;
    int threads = 0;
    std::string out, format = "csv";

    int run() {
        char sep = sep_for(format);
        if (dim < 2) die_usage("--dim must be at least 2");
        if (count < 1) die_usage("--count must be positive");
        std::vector<std::string> rows;
        int failures = run_batch(count, threads, rows, [&](int i, std::string& row) {
            qm_rng* rng = nullptr;
            qm_problem* p = nullptr;
            bool ok = qm_rng_create(seed, static_cast<uint64_t>(i), &rng) == QM_OK &&
                      qm_random_problem(dim, rng, &p) == QM_OK;
            double ct = 0, ncrb = 0, lwbv = 0;
            if (ok) {
                double qfi[4];
                qm_weight wi = qm_weight_scalar(1.0);
                qm_lwb_result lres{};
                ok = qm_sld_qfi(p, qfi) == QM_OK && qm_incompatibility(p, &ct) == QM_OK;
                if (ok) {
                    if (dim == 2) {
                        ok = qm_ncrb_qubit(p, &wi, &ncrb) == QM_OK;
                    } else {
                        qm_bound_result res{};
                        ok = qm_ncrb_general(p, &wi, nullptr, &res) == QM_OK && res.converged;
                        ncrb = res.value;
                    }
                }
                if (ok) {
                    ok = qm_lwb(qfi[0], qfi[3], ct, &lres) == QM_OK;
                    lwbv = lres.value;
                }
            }
            if (p) qm_problem_free(p);
            if (rng) qm_rng_free(rng);
            const double nan = std::nan("");
            if (!ok) {
                row = join({std::to_string(i), fmt(nan), fmt(nan), fmt(nan), fmt(nan)}, sep);
                return false;
            }
            double gap = (ncrb - lwbv) / ncrb;
            row = join({std::to_string(i), fmt(ct), fmt(ncrb), fmt(lwbv), fmt(gap)}, sep);
            return true;
        });
        Sink sink(out);
        sink.line(join({"index", "c_tilde", "ncrb", "lwb", "gap_normalized"}, sep));
        for (auto& r : rows) sink.line(r);
        if (failures)
            std::fprintf(stderr, "# %d of %d instances flagged (solver failure)\n", failures,
                         count);
        return 0;
    }
};

struct RandomMeasurementsCmd {
    std::string r, theta, phi;
    int count = 1000;
    std::string rank = "1";
    int outcomes = 3;
    uint64_t seed = 0;
    int threads = 0;
    std::string out, format = "csv";

    int run() {
        char sep = sep_for(format);
        if (count < 1) die_usage("--count must be positive");
        if (rank != "1" && rank != "full") die_usage("--rank must be 1 or full");
        if (outcomes < 2) die_usage("--outcomes must be at least 2");
        qm_problem* p = nullptr;
        check(qm_problem_rotations(strict_double(r, "--r"), parse_angle(theta, "--theta"),
                                   parse_angle(phi, "--phi"), &p),
              "rotations scenario");
        qm_weight wi = qm_weight_scalar(1.0);
        double cn;
        check(qm_ncrb_qubit(p, &wi, &cn), "ncrb");
        double qfi[4], ct;
        check(qm_sld_qfi(p, qfi), "sld_qfi");
        check(qm_incompatibility(p, &ct), "incompatibility");
        qm_lwb_result lres{};
        check(qm_lwb(qfi[0], qfi[3], ct, &lres), "lwb");
        bool rank1 = rank == "1";

        std::vector<std::string> rows;
        int failures = run_batch(count, threads, rows, [&](int i, std::string& row) {
            qm_rng* rng = nullptr;
            qm_povm* m = nullptr;
            bool ok = qm_rng_create(seed, static_cast<uint64_t>(i), &rng) == QM_OK;
            if (ok)
                ok = (rank1 ? qm_random_rank1_povm(2, outcomes, rng, &m)
                            : qm_random_fullrank_povm(2, outcomes, rng, &m)) == QM_OK;
            qm_regret_stats st{};
            if (ok) ok = qm_regret_report(p, m, &st) == QM_OK;
            if (m) qm_povm_free(m);
            if (rng) qm_rng_free(rng);
            const double nan = std::nan("");
            if (!ok) {
                row = join({std::to_string(i), fmt(nan), fmt(nan), fmt(nan), fmt(nan),
                            fmt(nan)},
                           sep);
                return false;
            }
            row = join({std::to_string(i), fmt(st.gap), fmt(st.precision),
                        fmt(st.classical_fisher[0]), fmt(st.classical_fisher[3]),
                        fmt(st.classical_fisher[1])},
                       sep);
            return true;
        });

        Sink sink(out);
        sink.line(join({"index", "G", "precision", "F11", "F22", "F12"}, sep));
        // reference rows: the best precision the NCRB allows and the LWB reciprocal
        sink.line(join({"-1", "0", fmt(std::isinf(cn) ? 0.0 : 1.0 / cn), "0", "0", "0"}, sep));
        sink.line(join({"-2", "0", fmt(1.0 / lres.value), "0", "0", "0"}, sep));
        for (auto& rw : rows) sink.line(rw);
        if (failures)
            std::fprintf(stderr, "# %d of %d instances flagged (solver failure)\n", failures,
                         count);
        qm_problem_free(p);
        return 0;
    }
};

struct RotationsCmd {
    std::string r, theta, phi;
    std::string out;

    int run() {
        qm_problem* p = nullptr;
        check(qm_problem_rotations(strict_double(r, "--r"), parse_angle(theta, "--theta"),
                                   parse_angle(phi, "--phi"), &p),
              "rotations scenario");
        int d = qm_problem_dim(p);
        std::vector<double> rho(2 * d * d), d1(2 * d * d), d2(2 * d * d);
        check(qm_problem_matrices(p, rho.data(), d1.data(), d2.data()), "matrices");
        auto mat = [&](const std::vector<double>& buf) {
            json rowsj = json::array();
            for (int i = 0; i < d; ++i) {
                json rowj = json::array();
                for (int k = 0; k < d; ++k)
                    rowj.push_back({buf[2 * (i * d + k)], buf[2 * (i * d + k) + 1]});
                rowsj.push_back(rowj);
            }
            return rowsj;
        };
        json j;
        j["dim"] = d;
        j["rho"] = mat(rho);
        j["drho1"] = mat(d1);
        j["drho2"] = mat(d2);
        Sink sink(out);
        sink.line(j.dump(2));
        qm_problem_free(p);
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"precision limits for quantum two-parameter estimation"};
    app.require_subcommand(1);

    BoundsCmd bounds;
    auto* cb = app.add_subcommand("bounds", "scalar bounds and diagnostics for one problem");
    bounds.src.add_flags(cb);
    bounds.weight.add_flags(cb);
    cb->add_option("--out", bounds.out, "write the table here instead of stdout");
    cb->add_option("--format", bounds.format, "csv or tsv");

    CurveCmd curve;
    auto* cc = app.add_subcommand("curve", "MSE trade-off curves as (v1, v2) tables");
    curve.src.add_flags(cc);
    cc->add_option("--kind", curve.kind, "nagaoka | lwur | sld-envelope | ncrb-envelope")
        ->required();
    cc->add_option("--points", curve.points, "grid size (default 101)");
    cc->add_option("--v1-min", curve.v1_min, "first v1 grid value (nagaoka/lwur)");
    cc->add_option("--v1-max", curve.v1_max, "last v1 grid value (nagaoka/lwur)");
    cc->add_option("--lambda-min", curve.lambda_min,
                   "envelope weight sweep: smallest sqrt((2-w)/w)");
    cc->add_option("--lambda-max", curve.lambda_max,
                   "envelope weight sweep: largest sqrt((2-w)/w)");
    cc->add_option("--out", curve.out, "write the table here instead of stdout");
    cc->add_option("--format", curve.format, "csv or tsv");

    RandomProblemsCmd rprob;
    auto* cp = app.add_subcommand("random-problems",
                                  "NCRB vs LWB over a random problem ensemble");
    cp->add_option("--dim", rprob.dim, "Hilbert-space dimension (>= 2)")->required();
    cp->add_option("--count", rprob.count, "ensemble size (default 1000)");
    cp->add_option("--seed", rprob.seed, "RNG seed (default 0); row i uses stream i");
    cp->add_option("--threads", rprob.threads, "worker threads (default: hardware)");
    cp->add_option("--out", rprob.out, "write the table here instead of stdout");
    cp->add_option("--format", rprob.format, "csv or tsv");

    RandomMeasurementsCmd rmeas;
    auto* cm = app.add_subcommand("random-measurements",
                                  "regret statistics of random POVMs on a rotation scenario");
    cm->add_option("--r", rmeas.r, "Bloch radius")->required();
    cm->add_option("--theta", rmeas.theta, "polar angle")->required();
    cm->add_option("--phi", rmeas.phi, "azimuthal angle")->required();
    cm->add_option("--count", rmeas.count, "ensemble size (default 1000)");
    cm->add_option("--rank", rmeas.rank, "1 (projective-like) or full");
    cm->add_option("--outcomes", rmeas.outcomes, "POVM outcomes (default 3)");
    cm->add_option("--seed", rmeas.seed, "RNG seed (default 0); row i uses stream i");
    cm->add_option("--threads", rmeas.threads, "worker threads (default: hardware)");
    cm->add_option("--out", rmeas.out, "write the table here instead of stdout");
    cm->add_option("--format", rmeas.format, "csv or tsv");

    RotationsCmd rot;
    auto* cr = app.add_subcommand("rotations", "emit a rotation-scenario problem file");
    cr->add_option("--r", rot.r, "Bloch radius")->required();
    cr->add_option("--theta", rot.theta, "polar angle")->required();
    cr->add_option("--phi", rot.phi, "azimuthal angle")->required();
    cr->add_option("--out", rot.out, "write the JSON here instead of stdout");

    auto* cs = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (cb->parsed()) return bounds.run();
    if (cc->parsed()) return curve.run();
    if (cp->parsed()) return rprob.run();
    if (cm->parsed()) return rmeas.run();
    if (cr->parsed()) return rot.run();
    if (cs->parsed()) return run_acceptance(stdout) == 0 ? 0 : 1;
    return 2;
}
