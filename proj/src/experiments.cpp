#include "stochgeo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "stochgeo/capgeom.hpp"
#include "stochgeo/hull.hpp"
#include "stochgeo/intrinsic.hpp"
#include "stochgeo/io.hpp"
#include "stochgeo/linalg.hpp"

namespace stochgeo {

namespace {

// stream-id tags so distinct experiments never share draw sequences
constexpr std::uint64_t kTagVariance = 0x76617269616e6365ULL;
constexpr std::uint64_t kTagExpect = 0x6578706563746174ULL;
constexpr std::uint64_t kTagEfron = 0x6566726f6e737465ULL;
constexpr std::uint64_t kTagTraj = 0x7472616a6563746fULL;
constexpr std::uint64_t kTagAngle = 0x616e676c656d6561ULL;
constexpr std::uint64_t kTagHatVs = 0x686174767376617aULL;
constexpr std::uint64_t kTagFloat = 0x666c6f6174696e67ULL;
constexpr std::uint64_t kTagFrames = 0x6672616d65736672ULL;
constexpr std::uint64_t kTagPilot = 0x70696c6f7470696cULL;

std::uint64_t rep_stream_id(std::uint64_t tag, long level, long rep, long attempt) {
    return mix64(mix64(mix64(tag, static_cast<std::uint64_t>(level)),
                       static_cast<std::uint64_t>(rep)),
                 static_cast<std::uint64_t>(attempt));
}

double sample_mean(const std::vector<double>& xs) {
    double m = 0.0;
    long k = 0;
    for (double x : xs) m += (x - m) / ++k;
    return m;
}

double sample_variance(const std::vector<double>& xs) {
    const long n = static_cast<long>(xs.size());
    if (n < 2) return 0.0;
    double m = sample_mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return ss / (n - 1);
}

}  // namespace

void parallel_for(long n, int threads, const std::function<void(long)>& f) {
    int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    t = static_cast<int>(std::max<long>(1, std::min<long>(t, n)));
    if (t == 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

double jackknife_variance_of_variance(const std::vector<double>& xs) {
    const long n = static_cast<long>(xs.size());
    if (n < 3) return 0.0;
    double m = sample_mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    // leave-one-out variances via the closed-form downdate
    std::vector<double> loo(n);
    double loo_mean = 0.0;
    for (long i = 0; i < n; ++i) {
        double ss_i = ss - (xs[i] - m) * (xs[i] - m) * n / (n - 1.0);
        loo[i] = ss_i / (n - 2.0);
        loo_mean += (loo[i] - loo_mean) / (i + 1);
    }
    double acc = 0.0;
    for (long i = 0; i < n; ++i) acc += (loo[i] - loo_mean) * (loo[i] - loo_mean);
    return acc * (n - 1.0) / n;
}

FitResult fit_exponent(const std::vector<std::array<double, 3>>& rows) {
    if (rows.size() < 3) throw OutOfRange("fit_exponent: need at least 3 rows");
    std::vector<std::vector<double>> X;
    std::vector<double> y, sigma;
    for (const auto& r : rows) {
        if (!(r[1] > 0.0)) throw NonPositive("fit_exponent: y values must be positive");
        if (!(r[0] > 0.0)) throw NonPositive("fit_exponent: x values must be positive");
        X.push_back({1.0, std::log(r[0])});
        y.push_back(std::log(r[1]));
        sigma.push_back(r[2] > 0.0 ? r[2] / r[1] : 0.0);  // delta method
    }
    LeastSquaresFit fit = weighted_least_squares(X, y, sigma);
    return FitResult{fit.coeff[1], fit.coeff_stderr[1], fit.coeff[0]};
}

// ---------------------------------------------------------------------------
// config & table plumbing

void ExperimentConfig::validate() const {
    const int d = body.dim();
    if (d < 2 || d > kMaxDim) throw OutOfRange("config: dimension outside [2,8]");
    if (s < 1 || s > d) throw OutOfRange("config: s outside [1,d]");
    if (reps < 2) throw OutOfRange("config: reps >= 2 required");
    if (n_grid.empty()) throw OutOfRange("config: empty n grid");
    long prev = 0;
    for (long n : n_grid) {
        if (n <= prev) throw OutOfRange("config: n grid must be strictly increasing");
        if (n < d + 1) throw OutOfRange("config: n >= d+1 required");
        prev = n;
    }
}

std::string ExperimentConfig::canonical_string(const std::string& tag) const {
    std::ostringstream os;
    os << "experiment=" << tag << ";body=";
    for (size_t i = 0; i < body.semiaxes.size(); ++i)
        os << (i ? "," : "") << format_g17(body.semiaxes[i]);
    os << ";s=" << s << ";n=";
    for (size_t i = 0; i < n_grid.size(); ++i) os << (i ? "," : "") << n_grid[i];
    os << ";reps=" << reps << ";seed=" << seed << ";evaluator="
       << (evaluator == EvaluatorKind::automatic ? "auto"
           : evaluator == EvaluatorKind::exact   ? "exact"
                                                 : "kubota")
       << ";frames=" << kubota_frames << ";share_frames=" << (share_frames ? 1 : 0);
    return os.str();
}

std::string ExperimentTable::csv() const {
    std::ostringstream os;
    for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_g17(row[i]);
        os << "\n";
    }
    return os.str();
}

std::string ExperimentTable::sidecar_json() const {
    auto num = [](double v) -> std::string {
        if (!std::isfinite(v)) return "null";
        return format_g17(v);
    };
    std::ostringstream os;
    os << "{\n";
    os << "  \"slope\": " << (has_slope ? num(slope) : "null") << ",\n";
    os << "  \"slope_stderr\": " << (has_slope ? num(slope_stderr) : "null") << ",\n";
    os << "  \"config_hash\": \"" << config_hash << "\",\n";
    os << "  \"seed\": " << seed << ",\n";
    os << "  \"resamples\": " << resamples;
    for (const auto& [k, v] : stats) os << ",\n  \"" << k << "\": " << num(v);
    os << "\n}\n";
    return os.str();
}

double ExperimentTable::cell(size_t row, const std::string& column) const {
    for (size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == column) return rows.at(row).at(c);
    throw OutOfRange("table: unknown column " + column);
}

// ---------------------------------------------------------------------------
// evaluators

namespace {

struct Evaluator {
    EvaluatorKind kind = EvaluatorKind::exact;
    int d = 0, s = 0;
    int frames_per_eval = 0;

    double operator()(const HullBuilder& hull, const std::vector<Frame>* shared,
                      RngStream& rng) const {
        if (kind == EvaluatorKind::exact) {
            if (s == d) return hull.volume();
            return 0.5 * hull.boundary_measure();  // facet sum, external angle 1/2
        }
        std::vector<Vec> verts = hull.vertex_points();
        if (shared) return kubota_intrinsic_points(verts, d, s, *shared).value;
        std::vector<Frame> frames;
        frames.reserve(frames_per_eval);
        for (int i = 0; i < frames_per_eval; ++i) frames.push_back(haar_subspace(d, s, rng));
        return kubota_intrinsic_points(verts, d, s, frames).value;
    }
};

Evaluator resolve_evaluator(const ExperimentConfig& cfg) {
    Evaluator ev;
    ev.d = cfg.body.dim();
    ev.s = cfg.s;
    ev.kind = cfg.evaluator;
    if (ev.kind == EvaluatorKind::automatic)
        ev.kind = (cfg.s >= ev.d - 1) ? EvaluatorKind::exact : EvaluatorKind::kubota;
    if (ev.kind == EvaluatorKind::exact && cfg.s < ev.d - 1)
        throw OutOfRange("evaluator: exact evaluation requires s in {d-1, d}");
    ev.frames_per_eval = cfg.kubota_frames;
    return ev;
}

HullBuilder build_hull(const BodySpec& body, long n, RngStream& rng) {
    HullBuilder hull(body.dim());
    for (long i = 0; i < n; ++i) hull.insert(uniform_body(body, rng));
    if (!hull.initialized()) throw DegenerateInput("experiment: degenerate point sample");
    return hull;
}

/// Pilot rule for the Kubota frame count: the Monte Carlo variance added per
/// polytope must stay below 1% of the inter-replication variance.
int pilot_frame_count(const ExperimentConfig& cfg, long n, std::uint64_t level) {
    const int pilot_reps = 8, pilot_frames = 128;
    const int d = cfg.body.dim();
    std::vector<double> values(pilot_reps);
    std::vector<double> mc_var(pilot_reps);
    for (int r = 0; r < pilot_reps; ++r) {
        RngStream rng(cfg.seed, rep_stream_id(kTagPilot, level, r, 0));
        for (int attempt = 0;; ++attempt) {
            try {
                HullBuilder hull = build_hull(cfg.body, n, rng);
                std::vector<Frame> frames;
                frames.reserve(pilot_frames);
                for (int i = 0; i < pilot_frames; ++i)
                    frames.push_back(haar_subspace(d, cfg.s, rng));
                IntrinsicEstimate est =
                    kubota_intrinsic_points(hull.vertex_points(), d, cfg.s, frames);
                values[r] = est.value;
                mc_var[r] = est.std_error * est.std_error * pilot_frames;  // per-frame variance
                break;
            } catch (const DegenerateInput&) {
                rng = RngStream(cfg.seed, rep_stream_id(kTagPilot, level, r, attempt + 1));
            }
        }
    }
    double total_var = sample_variance(values);
    double per_frame = sample_mean(mc_var);
    double inter_rep = std::max(total_var - per_frame / pilot_frames, per_frame / pilot_frames);
    double needed = per_frame / (0.01 * inter_rep);
    return static_cast<int>(std::clamp(needed, 64.0, 65536.0));
}

struct LevelOutcome {
    std::vector<double> values;
    long resamples = 0;
};

template <typename PerRep>
LevelOutcome run_level(const ExperimentConfig& cfg, std::uint64_t tag, long level, long reps,
                       const PerRep& per_rep) {
    LevelOutcome out;
    out.values.assign(reps, 0.0);
    std::atomic<long> resamples{0};
    parallel_for(reps, cfg.threads, [&](long rep) {
        for (long attempt = 0;; ++attempt) {
            RngStream rng(cfg.seed, rep_stream_id(tag, level, rep, attempt));
            try {
                out.values[rep] = per_rep(rng);
                return;
            } catch (const DegenerateInput&) {
                resamples.fetch_add(1);
            }
        }
    });
    out.resamples = resamples.load();
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// experiments

ExperimentTable variance_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    Evaluator ev = resolve_evaluator(cfg);
    const int d = cfg.body.dim();

    ExperimentTable table;
    table.columns = {"n", "mean", "variance", "var_of_var", "reps"};
    table.seed = cfg.seed;
    table.config_hash = fnv1a64_hex(cfg.canonical_string("variance"));

    std::vector<std::array<double, 3>> fit_rows;
    for (size_t li = 0; li < cfg.n_grid.size(); ++li) {
        const long n = cfg.n_grid[li];
        std::vector<Frame> shared;
        const std::vector<Frame>* shared_ptr = nullptr;
        Evaluator level_ev = ev;
        if (level_ev.kind == EvaluatorKind::kubota) {
            if (level_ev.frames_per_eval <= 0) {
                // pilot per level: the 1% rule compares this level's variances
                level_ev.frames_per_eval = pilot_frame_count(cfg, n, li);
                table.stats["kubota_frames_level" + std::to_string(li)] =
                    level_ev.frames_per_eval;
            }
            if (cfg.share_frames) {
                RngStream frame_rng(cfg.seed, rep_stream_id(kTagFrames, li, 0, 0));
                shared.reserve(level_ev.frames_per_eval);
                for (int i = 0; i < level_ev.frames_per_eval; ++i)
                    shared.push_back(haar_subspace(d, cfg.s, frame_rng));
                shared_ptr = &shared;
            }
        }
        LevelOutcome lvl = run_level(cfg, kTagVariance, li, cfg.reps, [&](RngStream& rng) {
            HullBuilder hull = build_hull(cfg.body, n, rng);
            return level_ev(hull, shared_ptr, rng);
        });
        double var = sample_variance(lvl.values);
        double vvar = jackknife_variance_of_variance(lvl.values);
        table.rows.push_back({static_cast<double>(n), sample_mean(lvl.values), var, vvar,
                              static_cast<double>(cfg.reps)});
        table.resamples += lvl.resamples;
        fit_rows.push_back({static_cast<double>(n), var, std::sqrt(vvar)});
    }
    FitResult fit = fit_exponent(fit_rows);
    table.slope = fit.slope;
    table.slope_stderr = fit.slope_stderr;
    table.has_slope = true;
    return table;
}

ExperimentTable expectation_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    Evaluator ev = resolve_evaluator(cfg);
    const int d = cfg.body.dim();
    const double reference = reference_intrinsic(cfg.body, cfg.s).value;
    const double vol = cfg.body.volume();

    ExperimentTable table;
    table.columns = {"n", "gap", "gap_stderr", "c_hat", "reps"};
    table.seed = cfg.seed;
    table.config_hash = fnv1a64_hex(cfg.canonical_string("expectation"));
    table.stats["reference_vs"] = reference;

    std::vector<std::array<double, 3>> fit_rows;
    for (size_t li = 0; li < cfg.n_grid.size(); ++li) {
        const long n = cfg.n_grid[li];
        LevelOutcome lvl = run_level(cfg, kTagExpect, li, cfg.reps, [&](RngStream& rng) {
            HullBuilder hull = build_hull(cfg.body, n, rng);
            return ev(hull, nullptr, rng);
        });
        double gap = reference - sample_mean(lvl.values);
        double se = std::sqrt(sample_variance(lvl.values) / cfg.reps);
        double c_hat = gap * std::pow(n / vol, 2.0 / (d + 1));
        table.rows.push_back(
            {static_cast<double>(n), gap, se, c_hat, static_cast<double>(cfg.reps)});
        table.resamples += lvl.resamples;
        fit_rows.push_back({static_cast<double>(n), gap, se});
    }
    FitResult fit = fit_exponent(fit_rows);
    table.slope = fit.slope;
    table.slope_stderr = fit.slope_stderr;
    table.has_slope = true;

    // stabilization of the constant over the top half of the grid
    size_t half = cfg.n_grid.size() / 2;
    double cmin = 0.0, cmax = 0.0, csum = 0.0;
    long k = 0;
    for (size_t i = half; i < table.rows.size(); ++i) {
        double c = table.rows[i][3];
        if (k == 0) cmin = cmax = c;
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
        csum += c;
        ++k;
    }
    table.stats["c_hat_top_mean"] = csum / k;
    table.stats["c_hat_top_spread"] = (cmax - cmin) / (csum / k);
    return table;
}

ExperimentTable efron_stein_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    Evaluator ev = resolve_evaluator(cfg);

    ExperimentTable table;
    table.columns = {"n",        "es_estimate", "es_stderr", "variance",
                     "var_of_var", "reps"};
    table.seed = cfg.seed;
    table.config_hash = fnv1a64_hex(cfg.canonical_string("efron-stein"));

    std::vector<std::array<double, 3>> fit_rows;
    for (size_t li = 0; li < cfg.n_grid.size(); ++li) {
        const long n = cfg.n_grid[li];
        std::vector<double> base_values(cfg.reps, 0.0);
        std::vector<double> sq_increments(cfg.reps, 0.0);
        std::atomic<long> resamples{0};
        parallel_for(cfg.reps, cfg.threads, [&](long rep) {
            for (long attempt = 0;; ++attempt) {
                RngStream rng(cfg.seed, rep_stream_id(kTagEfron, li, rep, attempt));
                try {
                    HullBuilder hull = build_hull(cfg.body, n, rng);
                    Vec extra = uniform_body(cfg.body, rng);
                    double v1 = ev(hull, nullptr, rng);
                    HullBuilder grown = hull;
                    grown.insert(extra);
                    double v2 = ev(grown, nullptr, rng);
                    base_values[rep] = v1;
                    sq_increments[rep] = (v2 - v1) * (v2 - v1);
                    return;
                } catch (const DegenerateInput&) {
                    resamples.fetch_add(1);
                }
            }
        });
        double es = (n + 1) * sample_mean(sq_increments);
        double es_se = (n + 1) * std::sqrt(sample_variance(sq_increments) / cfg.reps);
        double var = sample_variance(base_values);
        double vvar = jackknife_variance_of_variance(base_values);
        table.rows.push_back({static_cast<double>(n), es, es_se, var, vvar,
                              static_cast<double>(cfg.reps)});
        table.resamples += resamples.load();
        if (es > 0.0) fit_rows.push_back({static_cast<double>(n), es, es_se});
    }
    if (fit_rows.size() >= 3) {
        FitResult fit = fit_exponent(fit_rows);
        table.slope = fit.slope;
        table.slope_stderr = fit.slope_stderr;
        table.has_slope = true;
    }
    return table;
}

Trajectory strong_law_trajectory(const ExperimentConfig& cfg, long n_max, int checkpoint_power) {
    cfg.validate();
    Evaluator ev = resolve_evaluator(cfg);
    if (ev.kind != EvaluatorKind::exact)
        throw OutOfRange("strong_law_trajectory: exact evaluator required");
    const int d = cfg.body.dim();

    Trajectory traj;
    traj.seed = cfg.seed;
    traj.config_hash = fnv1a64_hex(cfg.canonical_string("strong-law"));
    traj.reference = reference_intrinsic(cfg.body, cfg.s).value;

    RngStream rng(cfg.seed, rep_stream_id(kTagTraj, 0, 0, 0));
    HullBuilder hull(d);
    long next_k = 1;
    while (static_cast<long>(std::pow(next_k, checkpoint_power)) < d + 1) ++next_k;
    long n = 0;
    RngStream dummy(cfg.seed, 1);
    while (n < n_max) {
        hull.insert(uniform_body(cfg.body, rng));
        ++n;
        long checkpoint = static_cast<long>(std::llround(std::pow(next_k, checkpoint_power)));
        if (n == checkpoint) {
            double v = ev(hull, nullptr, dummy);
            traj.checkpoints.push_back(n);
            traj.values.push_back(v);
            traj.gaps.push_back(traj.reference - v);
            traj.scaled_gaps.push_back((traj.reference - v) * std::pow(n, 2.0 / (d + 1)));
            ++next_k;
        }
    }
    return traj;
}

std::string Trajectory::csv() const {
    std::ostringstream os;
    os << "n,value,gap,scaled_gap\n";
    for (size_t i = 0; i < checkpoints.size(); ++i)
        os << checkpoints[i] << "," << format_g17(values[i]) << "," << format_g17(gaps[i]) << ","
           << format_g17(scaled_gaps[i]) << "\n";
    return os.str();
}

ExperimentTable angle_measure_experiment(int d, int s, const std::vector<double>& alphas,
                                         long n_frames, std::uint64_t seed) {
    if (s < 1 || s > d) throw OutOfRange("angle_measure: s outside [1,d]");
    for (double a : alphas)
        if (!(a > 0.0 && a <= 0.5)) throw OutOfRange("angle_measure: alpha outside (0, 0.5]");

    ExperimentTable table;
    table.columns = {"alpha", "measure", "stderr", "frames"};
    table.seed = seed;
    {
        std::ostringstream os;
        os << "experiment=angle-measure;d=" << d << ";s=" << s << ";alphas=";
        for (size_t i = 0; i < alphas.size(); ++i) os << (i ? "," : "") << format_g17(alphas[i]);
        os << ";frames=" << n_frames << ";seed=" << seed;
        table.config_hash = fnv1a64_hex(os.str());
    }

    const Vec z = Vec::unit(d, 0);
    std::vector<std::array<double, 3>> fit_rows;
    for (size_t ai = 0; ai < alphas.size(); ++ai) {
        RngStream rng(seed, rep_stream_id(kTagAngle, ai, 0, 0));
        long hits = 0;
        for (long i = 0; i < n_frames; ++i) {
            Frame A = haar_subspace(d, s, rng);
            if (angle_to_subspace(z, A) <= alphas[ai]) ++hits;
        }
        double p = static_cast<double>(hits) / n_frames;
        double se = std::sqrt(std::max(p * (1.0 - p), 1.0 / n_frames) / n_frames);
        table.rows.push_back({alphas[ai], p, se, static_cast<double>(n_frames)});
        if (p > 0.0) fit_rows.push_back({alphas[ai], p, se});
    }
    if (fit_rows.size() >= 3) {
        FitResult fit = fit_exponent(fit_rows);
        table.slope = fit.slope;
        table.slope_stderr = fit.slope_stderr;
        table.has_slope = true;
    }
    return table;
}

ExperimentTable hatvs_variance_experiment(int d, int s, const std::vector<double>& t_grid,
                                          int reps, int n_frames, std::uint64_t seed) {
    if (reps < 3) throw OutOfRange("hatvs_variance: reps >= 3 required");
    for (double t : t_grid)
        if (!(t > 0.0 && t <= 0.1)) throw OutOfRange("hatvs_variance: t outside (0, 0.1]");

    ExperimentTable table;
    table.columns = {"t", "variance", "var_of_var", "reps", "accept_prob"};
    table.seed = seed;
    {
        std::ostringstream os;
        os << "experiment=hatvs;d=" << d << ";s=" << s << ";t=";
        for (size_t i = 0; i < t_grid.size(); ++i) os << (i ? "," : "") << format_g17(t_grid[i]);
        os << ";reps=" << reps << ";frames=" << n_frames << ";seed=" << seed;
        table.config_hash = fnv1a64_hex(os.str());
    }

    const Vec x = Vec::unit(d, 0);
    std::vector<std::array<double, 3>> fit_rows;
    for (size_t ti = 0; ti < t_grid.size(); ++ti) {
        const double t = t_grid[ti];
        SimplexFamily fam = cap_construction(x, t);
        RngStream level_rng(seed, rep_stream_id(kTagHatVs, ti, 0, 0));
        std::vector<Vec> F;
        F.reserve(d);
        for (int j = 1; j <= d; ++j) F.push_back(uniform_simplex(fam.corner[j], level_rng));
        // frames drawn once per level: the frame noise is common to all reps,
        // so the variance over Z is not inflated by it
        HatVsFrames frames = hatvs_frames(d, s, x, t, n_frames, level_rng);

        std::vector<double> values(reps);
        for (int r = 0; r < reps; ++r) {
            Vec z0 = uniform_simplex(fam.corner[0], level_rng);
            values[r] = hat_vs_given(z0, F, frames);
        }
        double var = sample_variance(values);
        double vvar = jackknife_variance_of_variance(values);
        table.rows.push_back({t, var, vvar, static_cast<double>(reps), frames.accept_prob});
        fit_rows.push_back({t, var, std::sqrt(vvar)});
    }
    FitResult fit = fit_exponent(fit_rows);
    table.slope = fit.slope;
    table.slope_stderr = fit.slope_stderr;
    table.has_slope = true;
    return table;
}

ExperimentTable floating_containment_experiment(const ExperimentConfig& cfg, double c) {
    cfg.validate();
    if (!(c > 0.0)) throw OutOfRange("floating_containment: c must be positive");
    const int d = cfg.body.dim();
    if (!cfg.body.is_ball()) throw OutOfRange("floating_containment: ball body required");
    const double kd = unit_ball_volume(d);

    ExperimentTable table;
    table.columns = {"n", "fail_freq", "fail_stderr", "floating_radius", "reps"};
    table.seed = cfg.seed;
    table.config_hash = fnv1a64_hex(cfg.canonical_string("floating") + ";c=" + format_g17(c));

    for (size_t li = 0; li < cfg.n_grid.size(); ++li) {
        const long n = cfg.n_grid[li];
        // parameter (c log n / n) V(K), clamped to the half-ball where the
        // floating body degenerates to the origin
        double t_abs = std::min(c * std::log(static_cast<double>(n)) / n * kd, kd / 2.0);
        double r = wet_part(d, t_abs).floating_radius;
        LevelOutcome lvl = run_level(cfg, kTagFloat, li, cfg.reps, [&](RngStream& rng) {
            HullBuilder hull = build_hull(cfg.body, n, rng);
            bool contained = false;
            try {
                contained = hull.inradius() >= r;
            } catch (const OriginOutside&) {
                contained = false;
            }
            return contained ? 0.0 : 1.0;
        });
        double freq = sample_mean(lvl.values);
        double se = std::sqrt(std::max(freq * (1.0 - freq), 1.0 / cfg.reps) / cfg.reps);
        table.rows.push_back(
            {static_cast<double>(n), freq, se, r, static_cast<double>(cfg.reps)});
        table.resamples += lvl.resamples;
    }
    return table;
}

}  // namespace stochgeo
