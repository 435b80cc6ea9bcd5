#include "wrcm/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <string>
#include <vector>

#include "wrcm/criteria.hpp"
#include "wrcm/electrical.hpp"
#include "wrcm/graph_analysis.hpp"
#include "wrcm/graph_io.hpp"
#include "wrcm/percolation.hpp"
#include "wrcm/random_walk.hpp"
#include "wrcm/renorm.hpp"
#include "wrcm/sampler.hpp"

namespace wrcm {

namespace {

using njson = nlohmann::ordered_json;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void emit(const njson& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("Error: cannot open " + out_path);
    f << text;
    if (!f) throw std::runtime_error("Error: failed writing " + out_path);
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("Error: cannot open " + path);
    return f;
}

// model options shared by the sampling subcommands
struct ModelCli {
    ModelParams params;
    std::string kernel = "pa";
    std::string profile = "polynomial";
    std::string geometry = "torus";
    std::string method = "cell";
    bool palm = false;

    void add_options(CLI::App* sub, bool with_window = true) {
        sub->add_option("--d", params.d, "dimension (1, 2 or 3)")
            ->capture_default_str();
        sub->add_option("--beta", params.beta, "edge density parameter")
            ->capture_default_str();
        sub->add_option("--gamma", params.gamma, "kernel mark exponent")
            ->capture_default_str();
        sub->add_option("--delta", params.delta, "profile tail exponent")
            ->capture_default_str();
        sub->add_option("--kernel", kernel, "plain|sum|min|max|prod|pa")
            ->capture_default_str();
        if (with_window) {
            sub->add_option("--profile", profile, "indicator|polynomial")
                ->capture_default_str();
            sub->add_option("--side", params.window.side, "window side length")
                ->capture_default_str();
            sub->add_option("--geometry", geometry, "torus|box")
                ->capture_default_str();
            sub->add_option("--seed", params.seed, "RNG seed")->capture_default_str();
            sub->add_option("--sample-method", method, "naive|cell")
                ->capture_default_str();
            sub->add_flag("--palm", palm, "add the distinguished origin vertex");
        }
    }

    ModelParams resolve() {
        params.kernel = kernel_from_string(kernel);
        params.profile = profile_from_string(profile);
        params.window.geometry = geometry_from_string(geometry);
        validate(params);
        return params;
    }

    SampleMethod sample_method() const {
        if (method == "naive") return SampleMethod::Naive;
        if (method == "cell") return SampleMethod::Cell;
        throw std::invalid_argument("Error: unknown sample method '" + method + "'");
    }

    Graph sample() {
        const ModelParams p = resolve();
        MarkedPointSet pts = sample_points(p, p.seed);
        if (palm) pts = add_palm_origin(std::move(pts), p.seed);
        return sample_graph(pts, p, sample_method(), p.seed);
    }

    njson config_json(bool with_window = true) const {
        njson c;
        c["d"] = params.d;
        c["beta"] = params.beta;
        c["gamma"] = params.gamma;
        c["delta"] = params.delta;
        c["kernel"] = kernel;
        if (with_window) {
            c["profile"] = profile;
            c["side"] = params.window.side;
            c["geometry"] = geometry;
            c["seed"] = params.seed;
            c["sample_method"] = method;
            c["palm"] = palm;
        }
        return c;
    }
};

njson base_report(const std::string& command) {
    njson report;
    report["command"] = command;
    if (const char* threads = std::getenv("WRCM_THREADS"))
        report["threads"] = threads;  // accepted for compatibility; single-threaded
    return report;
}

Graph load_or_sample(const std::string& in_path, ModelCli& model, njson& config) {
    if (!in_path.empty()) {
        config["in"] = in_path;
        return read_graph(in_path);
    }
    return model.sample();
}

std::uint32_t pick_source(const Graph& graph, std::int64_t index) {
    if (index >= 0) {
        if (static_cast<std::uint64_t>(index) >= graph.size())
            throw std::invalid_argument("Error: start vertex out of range");
        return static_cast<std::uint32_t>(index);
    }
    if (!graph.points.palm)
        throw std::invalid_argument(
            "Error: graph has no palm vertex; pass an explicit index");
    return *graph.points.palm;
}

void add_sample(CLI::App& app) {
    auto sub = app.add_subcommand("sample", "draw a graph and report its size");
    sub->set_config("--config");
    auto model = std::make_shared<ModelCli>();
    model->add_options(sub);
    auto graph_out = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    sub->add_option("--graph-out", *graph_out, "write the graph to this file");
    sub->add_option("--out", *out, "write the JSON report here instead of stdout");
    sub->callback([model, graph_out, out]() {
        Timer timer;
        njson report = base_report("sample");
        report["config"] = model->config_json();
        const Graph g = model->sample();
        const double sample_s = timer.seconds();
        if (!graph_out->empty()) write_graph(g, *graph_out);
        njson metrics;
        metrics["vertices"] = g.size();
        metrics["edges"] = g.edges.size();
        metrics["mean_degree"] =
            g.size() ? 2.0 * g.edges.size() / g.size() : 0.0;
        if (g.points.palm) metrics["palm_degree"] = g.degree(*g.points.palm);
        report["metrics"] = metrics;
        report["timings"] = {{"sample_s", sample_s}, {"total_s", timer.seconds()}};
        emit(report, *out);
    });
}

void add_degrees(CLI::App& app) {
    auto sub = app.add_subcommand("degrees", "degree distribution and tail index");
    sub->set_config("--config");
    auto model = std::make_shared<ModelCli>();
    model->add_options(sub);
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto csv = std::make_shared<std::string>();
    auto frac = std::make_shared<double>(0.05);
    sub->add_option("--in", *in, "read a graph file instead of sampling");
    sub->add_option("--tail-fraction", *frac, "fraction of top degrees for the tail fit")
        ->capture_default_str();
    sub->add_option("--csv", *csv, "write the degree histogram here");
    sub->add_option("--out", *out, "write the JSON report here instead of stdout");
    sub->callback([model, in, out, csv, frac]() {
        Timer timer;
        njson report = base_report("degrees");
        njson config = model->config_json();
        config["tail_fraction"] = *frac;
        const Graph g = load_or_sample(*in, *model, config);
        report["config"] = config;
        const std::vector<std::uint32_t> deg = degrees(g);
        std::uint32_t max_deg = 0;
        double sum = 0.0;
        for (std::uint32_t x : deg) {
            max_deg = std::max(max_deg, x);
            sum += x;
        }
        njson metrics;
        metrics["vertices"] = g.size();
        metrics["mean_degree"] = g.size() ? sum / g.size() : 0.0;
        metrics["max_degree"] = max_deg;
        if (g.size() >= 1000) {
            const TailEstimate tail = degree_tail_exponent(g, *frac);
            metrics["tau_hat"] = tail.tau_hat;
            metrics["tau_stderr"] = tail.stderr_;
            metrics["tail_count"] = tail.tail_count;
        } else {
            metrics["tau_hat"] = nullptr;  // needs at least 1000 vertices
        }
        if (!csv->empty()) {
            std::vector<std::uint64_t> hist(max_deg + 1, 0);
            for (std::uint32_t x : deg) ++hist[x];
            auto f = open_csv(*csv);
            f << "degree,count\n";
            for (std::size_t k = 0; k < hist.size(); ++k)
                if (hist[k]) f << k << ',' << hist[k] << '\n';
        }
        report["metrics"] = metrics;
        report["timings"] = {{"total_s", timer.seconds()}};
        emit(report, *out);
    });
}

void add_percolate(CLI::App& app) {
    auto sub = app.add_subcommand("percolate",
                                  "Palm cluster reach probability, beta sweeps");
    sub->set_config("--config");
    auto model = std::make_shared<ModelCli>();
    model->add_options(sub);
    struct Opts {
        double radius = 8.0;
        std::uint32_t replicas = 200;
        double beta_lo = 0.0, beta_hi = 0.0;
        std::uint32_t beta_steps = 0;
        bool critical = false;
        double tol = 0.05, level = 0.5;
        std::string out, csv;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--radius", o->radius, "reach radius")->capture_default_str();
    sub->add_option("--replicas", o->replicas, "Monte Carlo replicas")
        ->capture_default_str();
    sub->add_option("--beta-lo", o->beta_lo, "sweep lower endpoint");
    sub->add_option("--beta-hi", o->beta_hi, "sweep upper endpoint");
    sub->add_option("--beta-steps", o->beta_steps, "sweep point count");
    sub->add_flag("--critical", o->critical, "bisect for the crossing of --level");
    sub->add_option("--tol", o->tol, "bracket width for --critical")
        ->capture_default_str();
    sub->add_option("--level", o->level, "crossing level for --critical")
        ->capture_default_str();
    sub->add_option("--csv", o->csv, "write sweep rows here");
    sub->add_option("--out", o->out, "write the JSON report here instead of stdout");
    sub->callback([model, o]() {
        Timer timer;
        njson report = base_report("percolate");
        njson config = model->config_json();
        config["radius"] = o->radius;
        config["replicas"] = o->replicas;
        const ModelParams params = model->resolve();
        njson metrics;
        if (o->critical) {
            config["beta_lo"] = o->beta_lo;
            config["beta_hi"] = o->beta_hi;
            config["tol"] = o->tol;
            config["level"] = o->level;
            const BetaCInterval bc =
                estimate_beta_c(params, o->radius, o->replicas, o->beta_lo,
                                o->beta_hi, o->tol, params.seed, o->level);
            metrics["beta_c_lo"] = bc.lo;
            metrics["beta_c_hi"] = bc.hi;
            metrics["crossing_level"] = bc.crossing_level;
            metrics["evaluations"] = bc.evaluations;
        } else if (o->beta_steps >= 2) {
            config["beta_lo"] = o->beta_lo;
            config["beta_hi"] = o->beta_hi;
            config["beta_steps"] = o->beta_steps;
            njson rows = njson::array();
            ModelParams p = params;
            std::unique_ptr<std::ofstream> csv_file;
            if (!o->csv.empty()) {
                csv_file = std::make_unique<std::ofstream>(open_csv(o->csv));
                *csv_file << "beta,theta,ci_lo,ci_hi,hits\n";
            }
            for (std::uint32_t i = 0; i < o->beta_steps; ++i) {
                const double t = static_cast<double>(i) / (o->beta_steps - 1);
                p.beta = o->beta_lo + t * (o->beta_hi - o->beta_lo);
                const ThetaEstimate th =
                    estimate_theta(p, o->radius, o->replicas, params.seed);
                rows.push_back({{"beta", th.beta},
                                {"theta", th.theta_hat},
                                {"ci_lo", th.ci_lo},
                                {"ci_hi", th.ci_hi}});
                if (csv_file)
                    *csv_file << th.beta << ',' << th.theta_hat << ',' << th.ci_lo
                              << ',' << th.ci_hi << ',' << th.hits << '\n';
            }
            metrics["sweep"] = rows;
        } else {
            const ThetaEstimate th =
                estimate_theta(params, o->radius, o->replicas, params.seed);
            metrics["theta_hat"] = th.theta_hat;
            metrics["ci_lo"] = th.ci_lo;
            metrics["ci_hi"] = th.ci_hi;
            metrics["hits"] = th.hits;
        }
        report["config"] = config;
        report["metrics"] = metrics;
        report["timings"] = {{"total_s", timer.seconds()}};
        emit(report, o->out);
    });
}

void add_walk(CLI::App& app) {
    auto sub = app.add_subcommand("walk", "random walk return statistics");
    sub->set_config("--config");
    auto model = std::make_shared<ModelCli>();
    model->add_options(sub);
    struct Opts {
        std::string in, out, csv;
        std::uint32_t horizon = 10000, replicas = 1000;
        std::int64_t start = -1;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--in", o->in, "read a graph file instead of sampling");
    sub->add_option("--horizon", o->horizon, "steps per walk")->capture_default_str();
    sub->add_option("--replicas", o->replicas, "number of walks")
        ->capture_default_str();
    sub->add_option("--start-index", o->start,
                    "start vertex (default: the palm vertex)");
    sub->add_option("--csv", o->csv, "write the first-return histogram here");
    sub->add_option("--out", o->out, "write the JSON report here instead of stdout");
    sub->callback([model, o]() {
        Timer timer;
        njson report = base_report("walk");
        njson config = model->config_json();
        config["horizon"] = o->horizon;
        config["replicas"] = o->replicas;
        const Graph g = load_or_sample(o->in, *model, config);
        const std::uint32_t start = pick_source(g, o->start);
        config["start"] = start;
        report["config"] = config;
        const WalkStats stats =
            walk_stats(g, start, o->horizon, o->replicas, g.points.seed);
        njson metrics;
        metrics["return_probability"] =
            static_cast<double>(stats.return_count) / stats.replicas;
        metrics["returns"] = stats.return_count;
        metrics["mean_range"] = stats.mean_range;
        metrics["min_range"] = stats.min_range;
        metrics["max_range"] = stats.max_range;
        if (!o->csv.empty()) {
            auto f = open_csv(o->csv);
            f << "step,first_returns\n";
            for (std::size_t t = 0; t < stats.first_return_hist.size(); ++t)
                if (stats.first_return_hist[t])
                    f << t + 1 << ',' << stats.first_return_hist[t] << '\n';
        }
        report["metrics"] = metrics;
        report["timings"] = {{"total_s", timer.seconds()}};
        emit(report, o->out);
    });
}

void add_conduct(CLI::App& app) {
    auto sub = app.add_subcommand(
        "conduct", "effective conductance from a vertex to a distance shell");
    sub->set_config("--config");
    auto model = std::make_shared<ModelCli>();
    model->add_options(sub);
    struct Opts {
        std::string in, out;
        double radius = 8.0, rel_tol = 1e-10;
        std::int64_t source = -1;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--in", o->in, "read a graph file instead of sampling");
    sub->add_option("--radius", o->radius, "sink distance from the source")
        ->capture_default_str();
    sub->add_option("--rel-tol", o->rel_tol, "solver tolerance")
        ->capture_default_str();
    sub->add_option("--source-index", o->source,
                    "source vertex (default: the palm vertex)");
    sub->add_option("--out", o->out, "write the JSON report here instead of stdout");
    sub->callback([model, o]() {
        Timer timer;
        njson report = base_report("conduct");
        njson config = model->config_json();
        config["radius"] = o->radius;
        config["rel_tol"] = o->rel_tol;
        const Graph g = load_or_sample(o->in, *model, config);
        const std::uint32_t source = pick_source(g, o->source);
        config["source"] = source;
        report["config"] = config;

        // unit-conductance network on the graph, sinks on the distance shell
        ElectricalNetwork net;
        net.n = static_cast<std::uint32_t>(g.size());
        for (const Edge& e : g.edges) net.edges.push_back({e.first, e.second, 1.0});
        std::vector<std::uint32_t> sinks;
        for (std::uint32_t v = 0; v < g.size(); ++v)
            if (v != source &&
                distance(g.points.window, g.points.d, g.points.position(v),
                         g.points.position(source)) >= o->radius)
                sinks.push_back(v);
        const double c_eff = effective_conductance(net, source, sinks, o->rel_tol);
        njson metrics;
        metrics["c_eff"] = c_eff;
        metrics["sinks"] = sinks.size();
        report["metrics"] = metrics;
        report["timings"] = {{"total_s", timer.seconds()}};
        emit(report, o->out);
    });
}

void add_project(CLI::App& app) {
    auto sub = app.add_subcommand(
        "project", "collapse a planar graph onto its unit-cell lattice network");
    sub->set_config("--config");
    auto model = std::make_shared<ModelCli>();
    model->add_options(sub);
    struct Opts {
        std::string in, out, csv, tail_csv;
        double tail_c1 = 0.0;
        std::uint32_t tail_n = 100;
        int nash_r0 = 0, nash_shells = 3;
        double rel_tol = 1e-10;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--in", o->in, "read a graph file instead of sampling");
    sub->add_option("--csv", o->csv, "write the lattice bonds here");
    sub->add_option("--tail-c1", o->tail_c1,
                    "enable the conductance tail table at this c1");
    sub->add_option("--tail-n", o->tail_n, "tail table depth")->capture_default_str();
    sub->add_option("--tail-csv", o->tail_csv, "write the tail table here");
    sub->add_option("--nash-r0", o->nash_r0,
                    "enable the cutset bound with this base radius");
    sub->add_option("--nash-shells", o->nash_shells, "number of dyadic shells")
        ->capture_default_str();
    sub->add_option("--rel-tol", o->rel_tol, "solver tolerance")
        ->capture_default_str();
    sub->add_option("--out", o->out, "write the JSON report here instead of stdout");
    sub->callback([model, o]() {
        Timer timer;
        njson report = base_report("project");
        njson config = model->config_json();
        const Graph g = load_or_sample(o->in, *model, config);
        report["config"] = config;
        const ElectricalNetwork net = project_to_lattice(g);
        njson metrics;
        metrics["cells"] = net.n;
        metrics["bonds"] = net.edges.size();
        double total = 0.0;
        for (const CEdge& e : net.edges) total += e.c;
        metrics["total_conductance"] = total;
        if (!o->csv.empty()) {
            auto f = open_csv(o->csv);
            f << "x1,y1,x2,y2,c\n";
            for (const CEdge& e : net.edges)
                f << net.coords[e.u][0] << ',' << net.coords[e.u][1] << ','
                  << net.coords[e.v][0] << ',' << net.coords[e.v][1] << ',' << e.c
                  << '\n';
        }
        if (o->tail_c1 > 0.0) {
            const SurvivalTable table = conductance_tail(net, o->tail_c1, o->tail_n);
            metrics["tail_any_violation"] = table.any_violation;
            if (!o->tail_csv.empty()) {
                auto f = open_csv(o->tail_csv);
                f << "n,survival,envelope\n";
                for (std::size_t i = 0; i < table.n.size(); ++i)
                    f << table.n[i] << ',' << table.survival[i] << ','
                      << 1.0 / table.n[i] << '\n';
            }
        }
        if (o->nash_r0 > 0) {
            if (!g.points.palm)
                throw std::invalid_argument(
                    "Error: the cutset bound needs a palm vertex for its center");
            const double* p = g.points.position(*g.points.palm);
            const std::array<int, 2> center{static_cast<int>(std::floor(p[0])),
                                            static_cast<int>(std::floor(p[1]))};
            std::uint32_t source = 0xffffffffu;
            for (std::uint32_t v = 0; v < net.n; ++v)
                if (net.coords[v] == center) source = v;
            if (source == 0xffffffffu)
                throw std::runtime_error("Error: palm cell missing from the lattice");
            const auto cutsets = annular_cutsets(net, center, o->nash_r0,
                                                 o->nash_shells);
            const double bound = nash_williams_bound(net, source, cutsets);
            metrics["nash_bound"] = bound;
            const long last = static_cast<long>(o->nash_r0)
                              << (o->nash_shells - 1);
            std::vector<std::uint32_t> sinks;
            for (std::uint32_t v = 0; v < net.n; ++v) {
                const long dx = std::labs(long(net.coords[v][0]) - center[0]);
                const long dy = std::labs(long(net.coords[v][1]) - center[1]);
                if (std::max(dx, dy) > last) sinks.push_back(v);
            }
            metrics["c_eff_beyond_shells"] =
                effective_conductance(net, source, sinks, o->rel_tol);
        }
        report["metrics"] = metrics;
        report["timings"] = {{"total_s", timer.seconds()}};
        emit(report, o->out);
    });
}

void add_renorm(CLI::App& app) {
    auto sub = app.add_subcommand(
        "renorm", "stage sequences, box labels, coarse graining");
    sub->set_config("--config");
    auto model = std::make_shared<ModelCli>();
    model->add_options(sub);
    struct Opts {
        std::string mode = "sequences", out, csv;
        std::uint32_t n_star = 10, terms = 50, stage = 2;
        double eps = 0.1, c1_max = 1.0, eps_star = 0.05;
        double box_side = 10.0, lambda = 0.8;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--mode", o->mode, "sequences|boxes|coarse")
        ->capture_default_str();
    sub->add_option("--n-star", o->n_star, "base stage index")->capture_default_str();
    sub->add_option("--eps", o->eps, "threshold exponent margin")
        ->capture_default_str();
    sub->add_option("--terms", o->terms, "number of sequence terms")
        ->capture_default_str();
    sub->add_option("--c1-max", o->c1_max, "max-kernel constant")
        ->capture_default_str();
    sub->add_option("--stage", o->stage, "box stage l for --mode boxes")
        ->capture_default_str();
    sub->add_option("--eps-star", o->eps_star, "bad-mark exponent margin")
        ->capture_default_str();
    sub->add_option("--box-side", o->box_side, "M for --mode coarse")
        ->capture_default_str();
    sub->add_option("--lambda", o->lambda, "density exponent for --mode coarse")
        ->capture_default_str();
    sub->add_option("--csv", o->csv, "write per-term/per-site rows here");
    sub->add_option("--out", o->out, "write the JSON report here instead of stdout");
    sub->callback([model, o]() {
        Timer timer;
        njson report = base_report("renorm");
        njson config = model->config_json();
        config["mode"] = o->mode;
        njson metrics;
        if (o->mode == "sequences") {
            config["n_star"] = o->n_star;
            config["eps"] = o->eps;
            config["terms"] = o->terms;
            const ModelParams p = model->resolve();
            const StageSequences seq =
                stage_sequences(p.kernel, p.gamma, p.delta, p.d, p.beta, o->n_star,
                                o->eps, o->terms, p.seed, o->c1_max);
            metrics["p_b"] = seq.p_b;
            metrics["u_1"] = seq.u.front();
            metrics["log_u_last"] = seq.log_u.back();
            metrics["partial_inv_c"] = seq.partial_inv_c.back();
            metrics["inv_c_tail"] = seq.partial_inv_c.size() > 1
                                        ? seq.partial_inv_c.back() -
                                              seq.partial_inv_c[seq.partial_inv_c.size() - 2]
                                        : seq.partial_inv_c.back();
            if (!o->csv.empty()) {
                auto f = open_csv(o->csv);
                f << "n,log_u,big_c,big_d,partial_inv_c\n";
                for (std::size_t i = 0; i < seq.u.size(); ++i)
                    f << i + 1 << ',' << seq.log_u[i] << ',' << seq.big_c[i] << ','
                      << seq.big_d[i] << ',' << seq.partial_inv_c[i] << '\n';
            }
        } else if (o->mode == "boxes") {
            config["stage"] = o->stage;
            config["eps_star"] = o->eps_star;
            const Graph g = model->sample();
            const BoxLabeling boxes = classify_boxes(g, o->stage, o->eps_star);
            metrics["boxes"] = boxes.labels.size();
            metrics["threshold"] = boxes.threshold;
            metrics["bad_fraction"] = boxes.bad_fraction;
            metrics["irregular_fraction"] = boxes.irregular_fraction;
        } else if (o->mode == "coarse") {
            config["box_side"] = o->box_side;
            config["lambda"] = o->lambda;
            const Graph g = model->sample();
            const CoarseGrain cg = coarse_grain(g, o->box_side, o->lambda);
            std::size_t occupied = 0;
            for (char c : cg.occupied) occupied += c != 0;
            metrics["sites"] = cg.occupied.size();
            metrics["occupied"] = occupied;
            metrics["bonds"] = cg.bonds.size();
            metrics["threshold"] = cg.threshold;
            if (!o->csv.empty()) {
                const int d = model->params.d;
                auto f = open_csv(o->csv);
                f << "site,coords,occupied\n";
                for (std::size_t i = 0; i < cg.occupied.size(); ++i) {
                    f << i << ',';
                    for (int k = 0; k < d; ++k)
                        f << cg.coords[i * d + k] << (k + 1 < d ? ' ' : ',');
                    f << int(cg.occupied[i]) << '\n';
                }
            }
        } else {
            throw std::invalid_argument("Error: unknown renorm mode '" + o->mode +
                                        "'");
        }
        report["config"] = config;
        report["metrics"] = metrics;
        report["timings"] = {{"total_s", timer.seconds()}};
        emit(report, o->out);
    });
}

void add_criteria(CLI::App& app) {
    auto sub = app.add_subcommand(
        "criteria", "closed-form recurrence/transience diagnostics");
    sub->set_config("--config");
    auto model = std::make_shared<ModelCli>();
    model->add_options(sub, /*with_window=*/false);
    struct Opts {
        std::string mode = "kappa", out, csv;
        double n_lo = 10.0, n_hi = 1000.0;
        std::uint32_t n_points = 7;
        double eps = 0.1;
        std::uint32_t L = 12, K = 12;
        std::vector<double> r;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--mode", o->mode, "kappa|cropping|pi|gamma")
        ->capture_default_str();
    sub->add_option("--n-lo", o->n_lo, "kappa grid start")->capture_default_str();
    sub->add_option("--n-hi", o->n_hi, "kappa grid end")->capture_default_str();
    sub->add_option("--n-points", o->n_points, "kappa grid size")
        ->capture_default_str();
    sub->add_option("--eps", o->eps, "cropping threshold exponent")
        ->capture_default_str();
    sub->add_option("--L", o->L, "cropping stage depth")->capture_default_str();
    sub->add_option("--K", o->K, "cropping offset depth")->capture_default_str();
    sub->add_option("--r", o->r, "distances for --mode pi");
    sub->add_option("--csv", o->csv, "write per-point rows here");
    sub->add_option("--out", o->out, "write the JSON report here instead of stdout");
    sub->callback([model, o]() {
        Timer timer;
        njson report = base_report("criteria");
        njson config = model->config_json(false);
        config["mode"] = o->mode;
        const ModelParams p = [&] {
            ModelParams q = model->params;
            q.kernel = kernel_from_string(model->kernel);
            return q;
        }();
        njson metrics;
        if (o->mode == "kappa") {
            config["n_lo"] = o->n_lo;
            config["n_hi"] = o->n_hi;
            config["n_points"] = o->n_points;
            if (o->n_points < 3 || !(o->n_lo > 1.0) || !(o->n_hi > o->n_lo))
                throw std::invalid_argument("Error: bad kappa grid");
            std::vector<double> grid;
            for (std::uint32_t i = 0; i < o->n_points; ++i)
                grid.push_back(o->n_lo * std::pow(o->n_hi / o->n_lo,
                                                  double(i) / (o->n_points - 1)));
            const KappaResult kr =
                kappa_exponent(p.kernel, p.gamma, p.delta, p.d, grid);
            metrics["limit"] = kr.limit;
            metrics["last_exponent"] = kr.exponent.back();
            if (!o->csv.empty()) {
                auto f = open_csv(o->csv);
                f << "n,log_i,exponent\n";
                for (std::size_t i = 0; i < kr.n.size(); ++i)
                    f << kr.n[i] << ',' << kr.log_i[i] << ',' << kr.exponent[i]
                      << '\n';
            }
        } else if (o->mode == "cropping") {
            config["eps"] = o->eps;
            config["L"] = o->L;
            config["K"] = o->K;
            const CroppingReport cr =
                cropping_check(p.kernel, p.gamma, p.delta, p.d, o->eps, o->L, o->K);
            metrics["log_sup_term"] = cr.log_sup_term;
            metrics["sup_tail"] = cr.sup_tail;
            metrics["sums"] = cr.sums;
            metrics["tails"] = cr.tails;
            metrics["sup_converged"] = cr.sup_converged;
            metrics["sum_converged"] = {bool(cr.sum_converged[0]),
                                        bool(cr.sum_converged[1]),
                                        bool(cr.sum_converged[2])};
        } else if (o->mode == "pi") {
            if (o->r.empty())
                throw std::invalid_argument("Error: --r needs at least one distance");
            njson rows = njson::array();
            std::unique_ptr<std::ofstream> csv_file;
            if (!o->csv.empty()) {
                csv_file = std::make_unique<std::ofstream>(open_csv(o->csv));
                *csv_file << "r,pi,r2d_pi\n";
            }
            for (double r : o->r) {
                const double pi =
                    pair_connection_prob(p.kernel, p.gamma, p.delta, p.beta, p.d, r);
                const double scaled = std::pow(r, 2.0 * p.d) * pi;
                rows.push_back({{"r", r}, {"pi", pi}, {"r2d_pi", scaled}});
                if (csv_file) *csv_file << r << ',' << pi << ',' << scaled << '\n';
            }
            metrics["pi"] = rows;
        } else if (o->mode == "gamma") {
            const GammaCondition gc = gamma_condition(p.kernel, p.gamma);
            metrics["limsup"] = gc.limsup;
            metrics["pass"] = gc.pass;
        } else {
            throw std::invalid_argument("Error: unknown criteria mode '" + o->mode +
                                        "'");
        }
        report["config"] = config;
        report["metrics"] = metrics;
        report["timings"] = {{"total_s", timer.seconds()}};
        emit(report, o->out);
    });
}

void add_phase(CLI::App& app) {
    auto sub = app.add_subcommand("phase", "recurrence/transience phase label");
    sub->set_config("--config");
    struct Opts {
        std::string kernel = "pa", out;
        double gamma = 0.5, delta = 3.0;
        int d = 2;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--kernel", o->kernel, "plain|sum|min|max|prod|pa")
        ->capture_default_str();
    sub->add_option("--gamma", o->gamma, "kernel mark exponent")
        ->capture_default_str();
    sub->add_option("--delta", o->delta, "profile tail exponent")
        ->capture_default_str();
    sub->add_option("--d", o->d, "dimension")->capture_default_str();
    sub->add_option("--out", o->out, "write the JSON report here instead of stdout");
    sub->callback([o]() {
        Timer timer;
        njson report = base_report("phase");
        report["config"] = {{"kernel", o->kernel},
                            {"gamma", o->gamma},
                            {"delta", o->delta},
                            {"d", o->d}};
        const PhaseLabel label =
            phase_classify(kernel_from_string(o->kernel), o->gamma, o->delta, o->d);
        report["label"] = to_string(label);
        report["metrics"] = {{"label", to_string(label)}};
        report["timings"] = {{"total_s", timer.seconds()}};
        emit(report, o->out);
    });
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"weight-dependent random connection model toolkit"};
    app.require_subcommand(1);
    add_sample(app);
    add_degrees(app);
    add_percolate(app);
    add_walk(app);
    add_conduct(app);
    add_project(app);
    add_renorm(app);
    add_criteria(app);
    add_phase(app);

    std::vector<const char*> argv;
    argv.push_back("wrcm");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace wrcm
