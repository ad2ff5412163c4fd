// stochgeo: command-line front end for the random-polytope laboratory.
// Subcommands sample points and bodies, build hulls, evaluate intrinsic
// volumes and cap/wet-part quantities, and run the replicated experiments.
// Every run logs the resolved config hash; identical config and seed give
// byte-identical outputs for any --threads value.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stochgeo/capgeom.hpp"
#include "stochgeo/experiments.hpp"
#include "stochgeo/hull.hpp"
#include "stochgeo/intrinsic.hpp"
#include "stochgeo/io.hpp"
#include "stochgeo/sampling.hpp"

using namespace stochgeo;

namespace {

std::vector<long> parse_n_grid(const std::string& text) {
    std::vector<long> out;
    size_t dots = text.find("..");
    if (dots != std::string::npos) {
        // geometric range: start..stop[xratio], ratio defaults to 2
        long start = std::stol(text.substr(0, dots));
        std::string rest = text.substr(dots + 2);
        long ratio = 2;
        size_t x = rest.find('x');
        if (x != std::string::npos) {
            ratio = std::stol(rest.substr(x + 1));
            rest = rest.substr(0, x);
        }
        long stop = std::stol(rest);
        if (start < 1 || stop < start || ratio < 2)
            throw OutOfRange("invalid n range: " + text);
        for (long n = start; n <= stop; n *= ratio) out.push_back(n);
        return out;
    }
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stol(tok));
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

struct ConfigMerger {
    struct Binding {
        CLI::Option* opt = nullptr;
        std::function<void(const std::string&)> apply;
    };
    std::map<std::string, Binding> bindings;

    void bind_long(CLI::Option* opt, const std::string& key, long* target) {
        bindings[key] = {opt, [target](const std::string& v) { *target = std::stol(v); }};
    }
    void bind_int(CLI::Option* opt, const std::string& key, int* target) {
        bindings[key] = {opt, [target](const std::string& v) { *target = std::stoi(v); }};
    }
    void bind_u64(CLI::Option* opt, const std::string& key, std::uint64_t* target) {
        bindings[key] = {opt, [target](const std::string& v) { *target = std::stoull(v); }};
    }
    void bind_double(CLI::Option* opt, const std::string& key, double* target) {
        bindings[key] = {opt, [target](const std::string& v) { *target = std::stod(v); }};
    }
    void bind_string(CLI::Option* opt, const std::string& key, std::string* target) {
        bindings[key] = {opt, [target](const std::string& v) { *target = v; }};
    }
    void bind_flag(CLI::Option* opt, const std::string& key, bool* target) {
        bindings[key] = {opt, [target](const std::string& v) {
                             *target = (v == "1" || v == "true" || v == "yes");
                         }};
    }

    /// Apply config-file values beneath any explicitly passed flags.
    void merge(const std::string& config_path) {
        if (config_path.empty()) return;
        auto kv = parse_config_file(read_text_file(config_path));
        for (const auto& [key, value] : kv) {
            auto it = bindings.find(key);
            if (it == bindings.end())
                throw OutOfRange("config file: unknown key '" + key + "'");
            if (it->second.opt == nullptr || it->second.opt->count() == 0)
                it->second.apply(value);
        }
    }
};

BodySpec make_body(int dim, const std::string& semiaxes) {
    if (semiaxes.empty()) return BodySpec::ball(dim);
    return BodySpec::ellipsoid(parse_double_list(semiaxes));
}

void emit_table(const ExperimentTable& table, const std::string& out_path,
                const std::string& json_path) {
    std::string sidecar = json_path;
    if (sidecar.empty() && !out_path.empty()) sidecar = out_path + ".json";
    if (out_path.empty())
        std::fputs(table.csv().c_str(), stdout);
    else
        write_text_file(out_path, table.csv());
    if (!sidecar.empty()) write_text_file(sidecar, table.sidecar_json());
    std::fprintf(stderr, "config_hash=%s\n", table.config_hash.c_str());
}

/// Every run logs the hash of its resolved configuration to stderr.
void log_resolved(const std::string& canonical) {
    std::fprintf(stderr, "config_hash=%s\n", fnv1a64_hex(canonical).c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochgeo: uniform random polytopes in smooth convex bodies: "
                 "intrinsic volumes, cap coverings, and scaling-law experiments"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    if (const char* env = std::getenv("STOCHGEO_SEED")) seed = std::strtoull(env, nullptr, 10);

    // ---- sample ----
    auto* c_sample = app.add_subcommand("sample", "Draw uniform points (CSV to stdout or --out)");
    int sm_dim = 2;
    long sm_count = 100;
    std::string sm_axes, sm_out, sm_config;
    bool sm_sphere = false;
    std::uint64_t sm_stream = 0, sm_seed = seed;
    ConfigMerger sm_merge;
    sm_merge.bind_int(c_sample->add_option("--dim", sm_dim, "ambient dimension d (2..8)"), "dim", &sm_dim);
    sm_merge.bind_long(c_sample->add_option("--count", sm_count, "number of points"), "count", &sm_count);
    sm_merge.bind_string(c_sample->add_option("--semiaxes", sm_axes, "ellipsoid semiaxes a1,..,ad (unitless; default: unit ball)"), "semiaxes", &sm_axes);
    sm_merge.bind_flag(c_sample->add_flag("--sphere", sm_sphere, "sample the unit sphere S^{d-1} instead of the body"), "sphere", &sm_sphere);
    sm_merge.bind_u64(c_sample->add_option("--seed", sm_seed, "RNG seed (64-bit)"), "seed", &sm_seed);
    sm_merge.bind_u64(c_sample->add_option("--stream-id", sm_stream, "RNG stream id (64-bit)"), "stream-id", &sm_stream);
    sm_merge.bind_string(c_sample->add_option("--out", sm_out, "output CSV path"), "out", &sm_out);
    c_sample->add_option("--config", sm_config, "flat key=value config file; flags win");

    // ---- hull ----
    auto* c_hull = app.add_subcommand("hull", "Convex hull of a point set (JSON in, JSON out)");
    std::string h_in, h_out;
    c_hull->add_option("--in", h_in, "input JSON with dim + vertices/points")->required();
    c_hull->add_option("--out", h_out, "output polytope JSON path");

    // ---- intrinsic ----
    auto* c_intr = app.add_subcommand("intrinsic", "Intrinsic volume V_s of a polytope");
    std::string in_path, in_method = "external-angle";
    int in_s = 1, in_frames = 10000, in_angle_samples = 20000;
    long in_hits = 200000;
    std::uint64_t in_seed = seed;
    c_intr->add_option("--in", in_path, "input polytope JSON")->required();
    c_intr->add_option("--s", in_s, "intrinsic volume index s (1..d)")->required();
    c_intr->add_option("--method", in_method, "kubota | external-angle | steiner");
    c_intr->add_option("--frames", in_frames, "Kubota: number of Haar frames");
    c_intr->add_option("--angle-samples", in_angle_samples, "external-angle: MC directions per face (codim >= 3)");
    c_intr->add_option("--hit-samples", in_hits, "steiner: hit-or-miss samples per lambda");
    c_intr->add_option("--seed", in_seed, "RNG seed (64-bit)");

    // ---- capvol ----
    auto* c_capvol = app.add_subcommand("capvol", "Volume of the height-t cap of B^d");
    int cv_dim = 2;
    double cv_t = 0.5;
    c_capvol->add_option("--dim", cv_dim, "dimension d")->required();
    c_capvol->add_option("--t", cv_t, "cap height in [0,2]")->required();

    // ---- wetpart ----
    auto* c_wet = app.add_subcommand("wetpart", "Wet part profile at cap-volume parameter t");
    int wp_dim = 2;
    double wp_t = 1e-3;
    c_wet->add_option("--dim", wp_dim, "dimension d")->required();
    c_wet->add_option("--t", wp_t, "cap-volume parameter in (0, kappa_d/2]")->required();

    // ---- capcover ----
    auto* c_cover = app.add_subcommand("capcover", "Economic cap covering of the wet part");
    int cc_dim = 2;
    double cc_t = 1e-4;
    std::uint64_t cc_seed = seed;
    std::string cc_out;
    long cc_audit = 10000;
    c_cover->add_option("--dim", cc_dim, "dimension d")->required();
    c_cover->add_option("--t", cc_t, "normalized cap-volume parameter (unit-volume body)")->required();
    c_cover->add_option("--seed", cc_seed, "RNG seed (64-bit)");
    c_cover->add_option("--audit-samples", cc_audit, "samples for the coverage/containment audits");
    c_cover->add_option("--out", cc_out, "write cap centers CSV here");

    // ---- experiment ----
    auto* c_exp = app.add_subcommand("experiment", "Replicated experiments and slope fits");
    std::string kind;
    c_exp->add_option("kind", kind,
                      "variance | expectation | efron-stein | strong-law | angle-measure | hatvs | floating")
        ->required();
    int e_dim = 2, e_s = 2, e_reps = 100, e_frames = 0, e_threads = 0, e_kpow = 4;
    long e_nmax = 100000, e_angleframes = 100000;
    std::uint64_t e_seed = seed;
    double e_c = 10.0;
    bool e_noshare = false;
    std::string e_n = "128..8192x2", e_axes, e_out, e_json, e_eval = "auto";
    std::string e_alphas = "0.05,0.09,0.16,0.28,0.5", e_tgrid = "0.001,0.0032,0.01,0.032",
                e_config;
    ConfigMerger em;
    em.bind_int(c_exp->add_option("--dim", e_dim, "ambient dimension d (2..8)"), "dim", &e_dim);
    em.bind_int(c_exp->add_option("--s", e_s, "intrinsic volume index s (1..d)"), "s", &e_s);
    em.bind_string(c_exp->add_option("--n", e_n, "sample-size grid: start..stop[xratio] or comma list"), "n", &e_n);
    em.bind_int(c_exp->add_option("--reps", e_reps, "replications per grid level"), "reps", &e_reps);
    em.bind_u64(c_exp->add_option("--seed", e_seed, "RNG seed (64-bit; lowest priority source is STOCHGEO_SEED)"), "seed", &e_seed);
    em.bind_string(c_exp->add_option("--semiaxes", e_axes, "ellipsoid semiaxes a1,..,ad (default: unit ball)"), "semiaxes", &e_axes);
    em.bind_string(c_exp->add_option("--evaluator", e_eval, "auto | exact | kubota"), "evaluator", &e_eval);
    em.bind_int(c_exp->add_option("--frames", e_frames, "Kubota frames per evaluation (0: pilot rule)"), "frames", &e_frames);
    em.bind_flag(c_exp->add_flag("--no-share-frames", e_noshare, "draw fresh Haar frames per replication"), "no-share-frames", &e_noshare);
    em.bind_int(c_exp->add_option("--threads", e_threads, "worker threads (0: all cores); results identical for any value"), "threads", &e_threads);
    em.bind_long(c_exp->add_option("--nmax", e_nmax, "strong-law: trajectory length"), "nmax", &e_nmax);
    em.bind_int(c_exp->add_option("--kpow", e_kpow, "strong-law: checkpoint exponent (n_k = k^kpow)"), "kpow", &e_kpow);
    em.bind_string(c_exp->add_option("--alphas", e_alphas, "angle-measure: alpha grid (radians, in (0,0.5])"), "alphas", &e_alphas);
    em.bind_long(c_exp->add_option("--angle-frames", e_angleframes, "angle-measure: frames per alpha"), "angle-frames", &e_angleframes);
    em.bind_string(c_exp->add_option("--tgrid", e_tgrid, "hatvs: cap-height grid (each in (0, 0.1])"), "tgrid", &e_tgrid);
    em.bind_double(c_exp->add_option("--c", e_c, "floating: constant c in (c log n)/n"), "c", &e_c);
    em.bind_string(c_exp->add_option("--out", e_out, "output CSV path (stdout if omitted)"), "out", &e_out);
    em.bind_string(c_exp->add_option("--json", e_json, "JSON sidecar path (default: <out>.json)"), "json", &e_json);
    c_exp->add_option("--config", e_config, "flat key=value config file; flags win");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (c_sample->parsed()) {
            sm_merge.merge(sm_config);
            BodySpec body = make_body(sm_dim, sm_axes);
            {
                std::ostringstream os;
                os << "sample;dim=" << body.dim() << ";count=" << sm_count << ";semiaxes="
                   << sm_axes << ";sphere=" << sm_sphere << ";seed=" << sm_seed
                   << ";stream=" << sm_stream;
                log_resolved(os.str());
            }
            RngStream rng(sm_seed, sm_stream);
            std::vector<Vec> pts;
            pts.reserve(sm_count);
            for (long i = 0; i < sm_count; ++i)
                pts.push_back(sm_sphere ? uniform_sphere(body.dim(), rng)
                                        : uniform_body(body, rng));
            std::string csv = points_to_csv(pts);
            if (sm_out.empty())
                std::fputs(csv.c_str(), stdout);
            else
                write_text_file(sm_out, csv);
            return 0;
        }
        if (c_hull->parsed()) {
            log_resolved("hull;in=" + h_in + ";out=" + h_out);
            Polytope P = polytope_from_json(read_text_file(h_in));
            if (!h_out.empty()) write_text_file(h_out, polytope_to_json(P));
            std::printf("vertices,%zu\nfacets,%zu\nvolume,%s\n", P.vertices().size(),
                        P.facets().size(), format_g17(P.volume()).c_str());
            return 0;
        }
        if (c_intr->parsed()) {
            {
                std::ostringstream os;
                os << "intrinsic;in=" << in_path << ";s=" << in_s << ";method=" << in_method
                   << ";frames=" << in_frames << ";angle_samples=" << in_angle_samples
                   << ";hits=" << in_hits << ";seed=" << in_seed;
                log_resolved(os.str());
            }
            Polytope P = polytope_from_json(read_text_file(in_path));
            RngStream rng(in_seed, 0);
            IntrinsicEstimate est;
            if (in_method == "kubota") {
                est = kubota_intrinsic(P, in_s, in_frames, rng);
            } else if (in_method == "external-angle") {
                if (in_s == P.dim())
                    est = IntrinsicEstimate{in_s, P.volume(), 0.0, IntrinsicMethod::external_angle};
                else
                    est = exact_intrinsic(P, in_s, in_angle_samples, rng);
            } else if (in_method == "steiner") {
                std::vector<double> grid;
                for (int i = 0; i <= P.dim() + 2; ++i) grid.push_back(i * 1.0 / (P.dim() + 2));
                est = steiner_fit_oracle(P, grid, in_hits, rng)[in_s];
            } else {
                std::fprintf(stderr, "error: unknown --method '%s'\n", in_method.c_str());
                return 2;
            }
            std::printf("%s\n", format_g17(est.value).c_str());
            if (est.std_error > 0.0)
                std::fprintf(stderr, "std_error=%s\n", format_g17(est.std_error).c_str());
            return 0;
        }
        if (c_capvol->parsed()) {
            log_resolved("capvol;dim=" + std::to_string(cv_dim) + ";t=" + format_g17(cv_t));
            std::printf("%s\n", format_g17(cap_volume(cv_dim, cv_t)).c_str());
            return 0;
        }
        if (c_wet->parsed()) {
            log_resolved("wetpart;dim=" + std::to_string(wp_dim) + ";t=" + format_g17(wp_t));
            WetPartProfile w = wet_part(wp_dim, wp_t);
            std::printf("t,cap_height,floating_radius,wet_volume\n%s,%s,%s,%s\n",
                        format_g17(w.t).c_str(), format_g17(w.cap_height).c_str(),
                        format_g17(w.floating_radius).c_str(), format_g17(w.wet_volume).c_str());
            return 0;
        }
        if (c_cover->parsed()) {
            log_resolved("capcover;dim=" + std::to_string(cc_dim) + ";t=" + format_g17(cc_t) +
                         ";seed=" + std::to_string(cc_seed));
            RngStream rng(cc_seed, 0);
            CapCover cover = economic_cover(cc_dim, cc_t, rng);
            RngStream audit_rng = rng.substream(1);
            double coverage = cover_coverage_fraction(cover, cc_audit, audit_rng);
            bool disjoint = cover_inner_disjoint(cover);
            double contained = cover_cap_containment_fraction(cover, cc_audit, audit_rng);
            std::printf("m,%d\ncap_height,%s\nratio,%s\ncoverage,%s\ninner_disjoint,%d\n"
                        "cap_containment,%s\n",
                        cover.m, format_g17(cover.cap_height).c_str(),
                        format_g17(cover.ratio).c_str(), format_g17(coverage).c_str(),
                        disjoint ? 1 : 0, format_g17(contained).c_str());
            if (!cc_out.empty()) write_text_file(cc_out, points_to_csv(cover.centers));
            return 0;
        }
        if (c_exp->parsed()) {
            em.merge(e_config);
            ExperimentConfig cfg;
            cfg.body = make_body(e_dim, e_axes);
            cfg.s = e_s;
            cfg.n_grid = parse_n_grid(e_n);
            cfg.reps = e_reps;
            cfg.seed = e_seed;
            cfg.kubota_frames = e_frames;
            cfg.share_frames = !e_noshare;
            cfg.threads = e_threads;
            if (e_eval == "auto")
                cfg.evaluator = EvaluatorKind::automatic;
            else if (e_eval == "exact")
                cfg.evaluator = EvaluatorKind::exact;
            else if (e_eval == "kubota")
                cfg.evaluator = EvaluatorKind::kubota;
            else {
                std::fprintf(stderr, "error: unknown --evaluator '%s'\n", e_eval.c_str());
                return 2;
            }

            if (kind == "variance") {
                emit_table(variance_experiment(cfg), e_out, e_json);
            } else if (kind == "expectation") {
                emit_table(expectation_experiment(cfg), e_out, e_json);
            } else if (kind == "efron-stein") {
                emit_table(efron_stein_experiment(cfg), e_out, e_json);
            } else if (kind == "strong-law") {
                cfg.n_grid = {std::max<long>(e_nmax, cfg.body.dim() + 1)};
                Trajectory traj = strong_law_trajectory(cfg, e_nmax, e_kpow);
                if (e_out.empty())
                    std::fputs(traj.csv().c_str(), stdout);
                else
                    write_text_file(e_out, traj.csv());
                std::fprintf(stderr, "config_hash=%s\n", traj.config_hash.c_str());
            } else if (kind == "angle-measure") {
                emit_table(angle_measure_experiment(e_dim, e_s, parse_double_list(e_alphas),
                                                    e_angleframes, e_seed),
                           e_out, e_json);
            } else if (kind == "hatvs") {
                emit_table(hatvs_variance_experiment(e_dim, e_s, parse_double_list(e_tgrid),
                                                     e_reps, e_frames > 0 ? e_frames : 2000,
                                                     e_seed),
                           e_out, e_json);
            } else if (kind == "floating") {
                emit_table(floating_containment_experiment(cfg, e_c), e_out, e_json);
            } else {
                std::fprintf(stderr, "error: unknown experiment kind '%s'\n", kind.c_str());
                return 2;
            }
            return 0;
        }
    } catch (const OutOfRange& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NonPositive& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const DegenerateInput& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const IllConditioned& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const TooSmallCone& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const OriginOutside& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
