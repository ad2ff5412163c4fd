// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Tolerances are fixed here; seeds are fixed so a passing build
// stays passing.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "stochgeo/capgeom.hpp"
#include "stochgeo/experiments.hpp"
#include "stochgeo/intrinsic.hpp"
#include "stochgeo/io.hpp"

using namespace stochgeo;

namespace {

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

std::vector<long> pow2_grid(long lo, long hi) {
    std::vector<long> g;
    for (long n = lo; n <= hi; n *= 2) g.push_back(n);
    return g;
}

std::vector<Vec> cube_corners(int d, double lo, double hi) {
    std::vector<Vec> out;
    for (int mask = 0; mask < (1 << d); ++mask) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = (mask >> i & 1) ? hi : lo;
        out.push_back(v);
    }
    return out;
}

char buf[512];

// ---------------------------------------------------------------------------

void criterion_1() {
    double t0 = now_seconds();
    ExperimentConfig cfg;
    cfg.body = BodySpec::ball(2);
    cfg.s = 2;
    cfg.n_grid = pow2_grid(128, 8192);
    cfg.reps = 500;
    cfg.seed = 101;
    cfg.evaluator = EvaluatorKind::exact;
    ExperimentTable t2 = variance_experiment(cfg);
    bool ok2 = std::abs(t2.slope + 5.0 / 3.0) <= 0.15;

    cfg.body = BodySpec::ball(3);
    cfg.s = 3;
    cfg.seed = 102;
    ExperimentTable t3 = variance_experiment(cfg);
    bool ok3 = std::abs(t3.slope + 3.0 / 2.0) <= 0.2;

    double elapsed = now_seconds() - t0;
    std::snprintf(buf, sizeof(buf),
                  "variance slope d=2: %.4f (want -5/3 +- 0.15), d=3: %.4f (want -3/2 +- 0.2), "
                  "runtime %.0fs",
                  t2.slope, t3.slope, elapsed);
    report("C1 variance exponent, ball", ok2 && ok3, buf);
}

void criterion_2() {
    ExperimentConfig cfg;
    cfg.body = BodySpec::ellipsoid({1.5, 1.0, 0.75});
    cfg.s = 3;
    cfg.n_grid = pow2_grid(128, 8192);
    cfg.reps = 500;
    cfg.seed = 103;
    cfg.evaluator = EvaluatorKind::exact;
    ExperimentTable t = variance_experiment(cfg);
    bool ok = std::abs(t.slope + 1.5) <= 0.2;
    std::snprintf(buf, sizeof(buf), "ellipsoid (1.5,1,0.75) variance slope %.4f (want -1.5 +- 0.2)",
                  t.slope);
    report("C2 variance exponent, smooth non-ball body", ok, buf);
}

void criterion_3() {
    ExperimentConfig cfg;
    cfg.body = BodySpec::ball(2);
    cfg.s = 2;
    cfg.n_grid = pow2_grid(128, 8192);
    cfg.reps = 500;
    cfg.seed = 104;
    cfg.evaluator = EvaluatorKind::exact;
    ExperimentTable t = expectation_experiment(cfg);
    double spread = t.stats.at("c_hat_top_spread");
    bool ok_slope = std::abs(t.slope + 2.0 / 3.0) <= 0.07;
    bool ok_spread = spread <= 0.10;
    std::snprintf(buf, sizeof(buf),
                  "expectation slope %.4f (want -2/3 +- 0.07), c_hat top-half spread %.3f "
                  "(want <= 0.10, c_hat ~ %.3f)",
                  t.slope, spread, t.stats.at("c_hat_top_mean"));
    report("C3 expectation exponent and constant", ok_slope && ok_spread, buf);
}

void criterion_4() {
    ExperimentConfig cfg;
    cfg.body = BodySpec::ball(2);
    cfg.s = 2;
    cfg.n_grid = pow2_grid(32, 2048);
    cfg.reps = 6000;
    cfg.seed = 105;
    cfg.evaluator = EvaluatorKind::exact;
    ExperimentTable t = efron_stein_experiment(cfg);
    bool dominated = true;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        double es = t.cell(i, "es_estimate");
        double es_se = t.cell(i, "es_stderr");
        double var = t.cell(i, "variance");
        double vvar = t.cell(i, "var_of_var");
        if (!(es >= var - 3.0 * std::sqrt(es_se * es_se + vvar))) dominated = false;
    }
    bool ok_slope = std::abs(t.slope + 5.0 / 3.0) <= 0.2;
    std::snprintf(buf, sizeof(buf),
                  "domination at every n: %s; ES slope %.4f (want -5/3 +- 0.2)",
                  dominated ? "yes" : "NO", t.slope);
    report("C4 Efron-Stein inequality and rate", dominated && ok_slope, buf);
}

void criterion_5() {
    ExperimentConfig cfg;
    cfg.body = BodySpec::ball(2);
    cfg.s = 2;
    cfg.n_grid = {100000};
    cfg.reps = 2;
    cfg.seed = 114;
    cfg.evaluator = EvaluatorKind::exact;
    Trajectory traj = strong_law_trajectory(cfg, 100000, 4);
    bool monotone = true;
    for (size_t i = 1; i < traj.gaps.size(); ++i)
        if (traj.gaps[i] > traj.gaps[i - 1] + 1e-10) monotone = false;
    size_t k = traj.scaled_gaps.size();
    double lo = 1e99, hi = 0.0, mean = 0.0;
    for (size_t i = k - 5; i < k; ++i) {
        lo = std::min(lo, traj.scaled_gaps[i]);
        hi = std::max(hi, traj.scaled_gaps[i]);
        mean += traj.scaled_gaps[i] / 5.0;
    }
    double fluct = (hi - lo) / mean;
    std::snprintf(buf, sizeof(buf),
                  "gaps non-increasing: %s; scaled-gap fluctuation over last 5 checkpoints %.3f "
                  "(want <= 0.10; scaled gap ~ %.3f)",
                  monotone ? "yes" : "NO", fluct, mean);
    report("C5 strong-law trajectory proxy", monotone && fluct <= 0.10, buf);
}

void criterion_6() {
    bool ok = true;
    std::string detail;
    for (int d : {2, 3}) {
        double rmin = 1e99, rmax = 0.0;
        for (int i = 0; i <= 24; ++i) {
            double t = 1e-6 * std::pow(10.0, 4.0 * i / 24.0);
            double ratio = wet_part(d, t).wet_volume / std::pow(t, 2.0 / (d + 1));
            rmin = std::min(rmin, ratio);
            rmax = std::max(rmax, ratio);
        }
        std::snprintf(buf, sizeof(buf), "d=%d window %.4f ", d, rmax / rmin);
        detail += buf;
        if (rmax / rmin > 2.0) ok = false;
    }
    report("C6 wet-part scaling of the ball, exact profile", ok,
           detail + "(want <= 2 over t in [1e-6,1e-2])");
}

void criterion_7() {
    struct Case {
        int d, s;
    };
    bool ok = true;
    std::string detail;
    for (Case c : {Case{3, 1}, Case{3, 2}, Case{4, 2}}) {
        ExperimentTable t = angle_measure_experiment(
            c.d, c.s, {0.06, 0.1, 0.17, 0.29, 0.5}, 100000, 107 + c.d * 10 + c.s);
        double want = c.d - c.s;
        if (std::abs(t.slope - want) > 0.1) ok = false;
        std::snprintf(buf, sizeof(buf), "(%d,%d) slope %.3f/%g ", c.d, c.s, t.slope, want);
        detail += buf;
    }
    // exact cross-check at s = d-1: the complement normal is a Haar line, so
    // the measure at alpha is sin(alpha) exactly in d=3
    ExperimentTable x = angle_measure_experiment(3, 2, {0.1, 0.2, 0.3}, 100000, 117);
    double emp = x.cell(2, "measure"), se = x.cell(2, "stderr");
    double exact = std::sin(0.3);
    if (std::abs(emp - exact) > 4.0 * se) ok = false;
    std::snprintf(buf, sizeof(buf), "; exact s=d-1 check |%.5f - %.5f| <= 4se=%.5f", emp, exact,
                  4.0 * se);
    report("C7 Grassmannian angle measure", ok, detail + buf);
}

void criterion_8() {
    bool ok = true;
    std::string detail;
    for (int s : {1, 2}) {
        ExperimentTable t = hatvs_variance_experiment(
            2, s, {0.0316227766, 0.01, 0.0031622777, 0.001}, 500, 3000, 118 + s);
        if (std::abs(t.slope - 3.0) > 0.3) ok = false;
        std::snprintf(buf, sizeof(buf), "s=%d slope %.3f (want 3 +- 0.3) ", s, t.slope);
        detail += buf;
    }

    // monotone coupling of the two dual-cone regions with common frames
    RngStream rng(120, 0);
    const int d = 2;
    const double tt = 1e-2;
    Vec x = Vec::unit(d, 0);
    SimplexFamily fam = cap_construction(x, tt);
    std::vector<Vec> F;
    for (int j = 1; j <= d; ++j) F.push_back(uniform_simplex(fam.corner[j], rng));
    HatVsFrames frames = hatvs_frames(d, 1, x, tt, 2000, rng);
    Vec w(d);
    for (int k = 1; k <= d; ++k) w += fam.corner[0][k];
    w = w / static_cast<double>(d);
    Vec apex = fam.corner[0][0];
    Vec w1 = apex * (2.0 / 3.0) + w * (1.0 / 3.0);
    Vec w2 = apex * (1.0 / 3.0) + w * (2.0 / 3.0);
    int pairs = 0, mono = 0;
    long draws = 0, in_upper = 0, in_lower = 0;
    while (pairs < 300) {
        Vec Z1 = uniform_simplex(fam.corner[0], rng);
        Vec Z2 = uniform_simplex(fam.corner[0], rng);
        ++draws;
        bool up = in_outer_dual_cone(w1 - Z1, x, tt);
        bool lo = in_outer_dual_cone(Z2 - w2, x, tt);
        if (up) ++in_upper;
        if (lo) ++in_lower;
        if (!up || !lo) continue;
        ++pairs;
        if (hat_vs_given(Z1, F, frames) >= hat_vs_given(Z2, F, frames) - 1e-14) ++mono;
    }
    double frac = static_cast<double>(mono) / pairs;
    if (frac < 0.99) ok = false;
    // the smaller coupling region's volume fraction is the empirical analogue
    // of the existence-only constant gamma_0; reported, not asserted
    double gamma0 = std::min(in_upper, in_lower) / static_cast<double>(draws);
    std::snprintf(buf, sizeof(buf), "; monotone pairs %.3f (want >= 0.99), gamma_0 proxy %.3f",
                  frac, gamma0);
    report("C8 restricted-functional variance rate and monotonicity", ok, detail + buf);
}

void criterion_9() {
    bool ok = true;
    std::string detail;
    for (int d : {2, 3}) {
        double rmin = 1e99, rmax = 0.0;
        std::vector<std::array<double, 3>> fit_rows;
        for (double t : {1e-3, 1e-4, 1e-5}) {
            RngStream rng(121, static_cast<std::uint64_t>(d * 1000 - std::log10(t)));
            CapCover cover = economic_cover(d, t, rng);
            RngStream audit = rng.substream(7);
            double coverage = cover_coverage_fraction(cover, 10000, audit);
            bool disjoint = cover_inner_disjoint(cover);
            if (coverage != 1.0 || !disjoint) ok = false;
            rmin = std::min(rmin, cover.ratio);
            rmax = std::max(rmax, cover.ratio);
            fit_rows.push_back({1.0 / t, static_cast<double>(cover.m), std::sqrt((double)cover.m)});
        }
        FitResult fit = fit_exponent(fit_rows);
        double want = (d - 1.0) / (d + 1.0);
        if (rmax / rmin > 4.0) ok = false;
        if (std::abs(fit.slope - want) > 0.1) ok = false;
        std::snprintf(buf, sizeof(buf), "d=%d ratio window %.2f slope %.3f/%.3f ", d,
                      rmax / rmin, fit.slope, want);
        detail += buf;
    }
    report("C9 economic cap covering", ok,
           detail + "(coverage=1, inner caps disjoint, window <= 4, slope +- 0.1)");
}

void criterion_10() {
    bool ok = true;
    std::string detail;
    RngStream body_rng(122, 0);

    std::vector<std::pair<std::string, std::vector<Vec>>> bodies;
    bodies.emplace_back("cube", cube_corners(3, 0.0, 1.0));
    std::vector<Vec> simplex;
    for (int i = 0; i < 4; ++i) simplex.push_back(uniform_ball(3, body_rng));
    bodies.emplace_back("simplex", simplex);
    std::vector<Vec> cloud;
    for (int i = 0; i < 200; ++i) cloud.push_back(uniform_ball(3, body_rng));
    bodies.emplace_back("hull200", convex_hull(cloud, 3).vertices());

    for (auto& [name, verts] : bodies) {
        Polytope P = convex_hull(verts, 3);
        RngStream rng(123, fnv1a64(name));
        auto steiner =
            steiner_fit_oracle(P, {0.0, 0.15, 0.3, 0.5, 0.75, 1.05}, 250000, rng);
        for (int s = 1; s <= 3; ++s) {
            IntrinsicEstimate kub = kubota_intrinsic(P, s, 20000, rng);
            IntrinsicEstimate ext =
                (s == 3) ? IntrinsicEstimate{3, P.volume(), 0.0, IntrinsicMethod::external_angle}
                         : exact_intrinsic(P, s, 40000, rng);
            auto close = [](const IntrinsicEstimate& a, const IntrinsicEstimate& b) {
                double tol =
                    3.0 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error) + 1e-9;
                return std::abs(a.value - b.value) <= tol;
            };
            bool agree = close(kub, ext) && close(kub, steiner[s]) && close(ext, steiner[s]);
            if (!agree) {
                ok = false;
                std::snprintf(buf, sizeof(buf), "[%s s=%d kub %.4f ext %.4f st %.4f+-%.4f] ",
                              name.c_str(), s, kub.value, ext.value, steiner[s].value,
                              steiner[s].std_error);
                detail += buf;
            }
        }
    }
    if (ok) detail = "external-angle, Kubota, Steiner fits agree within 3 combined sigma on all bodies and s";
    report("C10 intrinsic-volume engine cross-validation", ok, detail);
}

void criterion_11() {
    ExperimentConfig cfg;
    cfg.body = BodySpec::ball(2);
    cfg.s = 2;
    cfg.n_grid = pow2_grid(64, 512);
    cfg.reps = 100;
    cfg.seed = 124;
    cfg.evaluator = EvaluatorKind::exact;

    cfg.threads = 1;
    ExperimentTable a = variance_experiment(cfg);
    cfg.threads = 2;
    ExperimentTable b = variance_experiment(cfg);
    cfg.threads = 0;  // all cores
    ExperimentTable c = variance_experiment(cfg);
    bool ok = a.csv() == b.csv() && b.csv() == c.csv() &&
              a.sidecar_json() == b.sidecar_json() && b.sidecar_json() == c.sidecar_json();
    report("C11 reproducibility across reruns and thread counts", ok,
           ok ? "CSV and sidecar byte-identical for threads in {1,2,all}"
              : "outputs differ between thread counts");
}

}  // namespace

int main() {
    std::printf("stochgeo acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
