#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stochgeo/rng.hpp"
#include "stochgeo/sampling.hpp"
#include "stochgeo/vec.hpp"

namespace stochgeo {

enum class EvaluatorKind { automatic, exact, kubota };

struct ExperimentConfig {
    BodySpec body = BodySpec::ball(2);
    int s = 2;
    std::vector<long> n_grid;
    int reps = 100;
    std::uint64_t seed = 0;
    EvaluatorKind evaluator = EvaluatorKind::automatic;
    int kubota_frames = 0;     // 0: choose by the pilot rule
    bool share_frames = true;  // common Haar frames per n level
    int threads = 0;           // 0: all hardware threads

    void validate() const;  // n_grid increasing, reps >= 2, n >= d+1
    std::string canonical_string(const std::string& tag) const;
};

struct ExperimentTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    double slope = 0.0;
    double slope_stderr = 0.0;
    bool has_slope = false;
    std::uint64_t seed = 0;
    std::string config_hash;
    long resamples = 0;
    std::map<std::string, double> stats;

    std::string csv() const;
    std::string sidecar_json() const;
    double cell(size_t row, const std::string& column) const;
};

struct FitResult {
    double slope = 0.0;
    double slope_stderr = 0.0;
    double intercept = 0.0;
};

/// Weighted least squares of log y on log x; weights from the relative
/// errors yerr/y. Rows are (x, y, yerr); yerr = 0 marks an exact row.
FitResult fit_exponent(const std::vector<std::array<double, 3>>& rows);

/// Sample variance of V_s(K_n) per grid level with a delete-one jackknife
/// variance-of-variance, and the fitted log-log slope across levels.
ExperimentTable variance_experiment(const ExperimentConfig& cfg);

/// Mean gap V_s(K) - V_s(K_n) per level, its standard error, the scaled
/// constant estimate c_hat = gap * (n / V(K))^{2/(d+1)}, and the slope.
ExperimentTable expectation_experiment(const ExperimentConfig& cfg);

/// The jackknife bound (n+1) E(V_s(K_{n+1}) - V_s(K_n))^2 estimated on the
/// same replications as the sample variance it dominates.
ExperimentTable efron_stein_experiment(const ExperimentConfig& cfg);

struct Trajectory {
    std::vector<long> checkpoints;  // n_k = k^power
    std::vector<double> values;     // V_s(K_{n_k})
    std::vector<double> gaps;       // V_s(K) - V_s(K_{n_k})
    std::vector<double> scaled_gaps;
    double reference = 0.0;
    std::uint64_t seed = 0;
    std::string config_hash;

    std::string csv() const;
};

/// One growing point stream with checkpoints n_k = k^power (default k^4).
Trajectory strong_law_trajectory(const ExperimentConfig& cfg, long n_max,
                                 int checkpoint_power = 4);

/// Empirical Haar measure of {A : angle(z, A) <= alpha} per alpha, with the
/// fitted slope of log measure vs log alpha.
ExperimentTable angle_measure_experiment(int d, int s, const std::vector<double>& alphas,
                                         long n_frames, std::uint64_t seed);

/// Sample variance of hat_vs over the apex corner simplex per cap height t,
/// with frames and the base points z_1..z_d drawn once per level.
ExperimentTable hatvs_variance_experiment(int d, int s, const std::vector<double>& t_grid,
                                          int reps, int n_frames, std::uint64_t seed);

/// Frequency that the floating body at parameter (c log n / n) V(K) fails to
/// be contained in K_n.
ExperimentTable floating_containment_experiment(const ExperimentConfig& cfg, double c);

/// Delete-one jackknife estimate of Var(sample variance) over replications.
double jackknife_variance_of_variance(const std::vector<double>& xs);

/// Run f(0..n-1) on a small thread pool; results must be written to
/// index-addressed slots so the outcome is identical for any thread count.
void parallel_for(long n, int threads, const std::function<void(long)>& f);

}  // namespace stochgeo
