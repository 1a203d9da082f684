// Command-line front end. Talks to the library only through starembed.h.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "starembed/starembed.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum Exit { exit_ok = 0, exit_usage = 1, exit_domain = 2, exit_failed = 3 };

struct Failure {
    int code;
    std::string message;
};

int exit_for(se_status status) {
    switch (status) {
        case SE_OK: return exit_ok;
        case SE_ERR_PARSE:
        case SE_ERR_SCHEMA:
        case SE_ERR_IO:
        case SE_ERR_INVALID_ARGUMENT: return exit_usage;
        case SE_ERR_HALVING_EXHAUSTED: return exit_failed;
        default: return exit_domain;
    }
}

void check(se_status status, const std::string& context) {
    if (status == SE_OK) return;
    throw Failure{exit_for(status), context + ": " + se_last_error()};
}

struct StringDeleter {
    void operator()(char* s) const { se_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ProblemDeleter {
    void operator()(se_problem* p) const { se_problem_free(p); }
};
struct EmbeddingDeleter {
    void operator()(se_embedding* e) const { se_embedding_free(e); }
};
struct PathDeleter {
    void operator()(se_path* p) const { se_path_free(p); }
};
using Problem = std::unique_ptr<se_problem, ProblemDeleter>;
using Embedding = std::unique_ptr<se_embedding, EmbeddingDeleter>;
using Path = std::unique_ptr<se_path, PathDeleter>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{exit_usage, "cannot read " + path};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Output files appear whole or not at all.
void write_atomic(const fs::path& target, const std::string& content) {
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Failure{exit_usage, "cannot write " + target.string()};
        out << content;
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw Failure{exit_usage, "cannot write " + target.string()};
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Failure{exit_usage, "cannot write " + target.string()};
    }
}

struct Global {
    std::optional<double> tol;
    bool quiet = false;
    bool json_out = false;
    std::string batch;
};

double tolerance(const Global& g) {
    if (g.tol) return *g.tol;
    if (const char* env = std::getenv("STAREMBED_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0 && std::isfinite(v)) return v;
        throw Failure{exit_usage, std::string("STAREMBED_TOL is not a positive number: ") + env};
    }
    return 1e-10;
}

void note(const Global& g, const std::string& text) {
    if (!g.quiet) std::cerr << text << "\n";
}

Problem load_problem(const std::string& path) {
    const std::string text = read_file(path);
    se_problem* raw = nullptr;
    check(se_problem_parse(text.c_str(), 1, &raw), path);
    return Problem(raw);
}

void emit(const std::string& output, const std::string& content) {
    if (output.empty() || output == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
    } else {
        write_atomic(output, content);
    }
}

std::string to_json(const se_embedding* e) {
    char* raw = nullptr;
    check(se_embedding_to_json(e, &raw), "serialize");
    return OwnedString(raw).get();
}

std::string to_svg(const se_embedding* e, bool kernel, const double* viewport) {
    se_render_options opts;
    se_render_options_init(&opts);
    opts.kernel_overlay = kernel ? 1 : 0;
    if (viewport) {
        opts.use_viewport = 1;
        std::copy(viewport, viewport + 4, opts.viewport);
    }
    char* raw = nullptr;
    check(se_embedding_render_svg(e, &opts, &raw), "render");
    return OwnedString(raw).get();
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0') throw Failure{exit_usage, "not a number: '" + item + "'"};
        out.push_back(v);
    }
    return out;
}

// ---- subcommands ----

struct ValidateArgs {
    std::string input;
    std::string output;
};

int run_validate(const Global& g, const ValidateArgs& a) {
    const Problem problem = load_problem(a.input);
    char* raw = nullptr;
    check(se_problem_mesh_report(problem.get(), &raw), a.input);
    const json report = json::parse(OwnedString(raw).get());
    if (g.json_out || !a.output.empty()) {
        emit(a.output, report.dump(2));
    } else {
        std::cout << "vertices " << report["vertices"] << ", faces " << report["faces"] << ", interior "
                  << report["n_interior"] << ", boundary " << report["n_boundary"] << "\n";
        std::cout << "boundary " << (report["convex"].get<bool>() ? "convex" : "non-convex")
                  << (report["strictly_star_shaped"].get<bool>() ? ", strictly star-shaped" : ", not star-shaped")
                  << "\n";
    }
    for (const auto& e : report["dividing_edges"]) {
        note(g, "warning: dividing edge " + std::to_string(e[0].get<int>()) + "-" + std::to_string(e[1].get<int>()));
    }
    return exit_ok;
}

struct EmbedArgs {
    std::string input;
    std::string output;
    std::string svg;
    std::string scheme = "file";
    std::uint64_t seed = 0;
};

int run_embed(const Global& g, const EmbedArgs& a) {
    const Problem problem = load_problem(a.input);
    se_tutte_options opts;
    se_tutte_options_init(&opts);
    opts.tolerance = tolerance(g);
    opts.seed = a.seed;
    opts.scheme = a.scheme == "uniform" ? SE_WEIGHTS_UNIFORM
                  : a.scheme == "random" ? SE_WEIGHTS_RANDOM
                                         : SE_WEIGHTS_FROM_PROBLEM;
    se_embedding* raw = nullptr;
    const se_status status = se_embed_tutte(problem.get(), &opts, &raw);
    const Embedding embedding(raw);
    check(status, a.input);
    if (!se_embedding_is_valid(embedding.get())) throw Failure{exit_failed, a.input + ": embedding failed validation"};
    const std::string doc = to_json(embedding.get());
    const std::string svg = a.svg.empty() ? "" : to_svg(embedding.get(), false, nullptr);
    emit(a.output, doc);
    if (!a.svg.empty()) write_atomic(a.svg, svg);
    note(g, "valid embedding");
    return exit_ok;
}

struct StarArgs {
    std::string input;
    std::string output;
    std::string svg;
    double eps0 = 0.5;
    int max_halvings = 60;
    std::string eye;
};

se_star_options star_options(const Global& g, double eps0, int max_halvings, const std::string& eye) {
    se_star_options opts;
    se_star_options_init(&opts);
    opts.initial_epsilon = eps0;
    opts.max_halvings = max_halvings;
    opts.tolerance = tolerance(g);
    if (!eye.empty()) {
        const auto xy = parse_list(eye);
        if (xy.size() != 2) throw Failure{exit_usage, "--eye expects x,y"};
        opts.use_eye = 1;
        opts.eye_x = xy[0];
        opts.eye_y = xy[1];
    }
    return opts;
}

int run_star(const Global& g, const StarArgs& a) {
    if (!(a.eps0 > 0 && a.eps0 < 1)) throw Failure{exit_usage, "--eps0 must lie in (0, 1)"};
    if (a.max_halvings < 0) throw Failure{exit_usage, "--max-halvings must be non-negative"};
    const Problem problem = load_problem(a.input);
    const se_star_options opts = star_options(g, a.eps0, a.max_halvings, a.eye);
    se_embedding* raw = nullptr;
    const se_status status = se_embed_star(problem.get(), &opts, &raw);
    const Embedding embedding(raw);
    check(status, a.input);
    const std::string doc = to_json(embedding.get());
    const std::string svg = a.svg.empty() ? "" : to_svg(embedding.get(), true, nullptr);
    emit(a.output, doc);
    if (!a.svg.empty()) write_atomic(a.svg, svg);
    char eps[64];
    std::snprintf(eps, sizeof eps, "%.17g", se_embedding_epsilon(embedding.get()));
    note(g, std::string("valid embedding at epsilon ") + eps);
    return exit_ok;
}

struct DiagnoseArgs {
    std::string input;
    std::string output;
    std::string sweep = "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6";
    std::string flavor = "uniform";
    std::size_t budget = 2000;
};

int run_diagnose(const Global& g, const DiagnoseArgs& a) {
    const Problem problem = load_problem(a.input);
    const auto eps = parse_list(a.sweep);
    if (eps.empty()) throw Failure{exit_usage, "--eps-sweep is empty"};
    const se_coupling_flavor flavor = a.flavor == "eye" ? SE_COUPLING_EYE : SE_COUPLING_UNIFORM;
    char* raw = nullptr;
    check(se_diagnose(problem.get(), flavor, eps.data(), eps.size(), a.budget, &raw), a.input);
    const json doc = json::parse(OwnedString(raw).get());
    if (g.json_out || !a.output.empty()) {
        emit(a.output, doc.dump(2));
        return exit_ok;
    }
    std::printf("limit point (%.12g, %.12g), expected lambda_min/eps %.12g\n", doc["limit_point"][0].get<double>(),
                doc["limit_point"][1].get<double>(), doc["expected_ratio"].get<double>());
    std::printf("%-10s %-14s %-14s %-14s %-14s\n", "epsilon", "lambda_min/eps", "|epsS^-1 - 1|", "dist_to_limit",
                "residual");
    for (const auto& row : doc["rows"]) {
        std::printf("%-10.3g %-14.6e %-14.6e %-14.6e %-14.3e\n", row["epsilon"].get<double>(),
                    row["lambda_min_over_epsilon"].get<double>(), row["inverse_deviation"].get<double>(),
                    row["max_distance_to_limit"].get<double>(), row["residual"].get<double>());
    }
    return exit_ok;
}

struct HomotopyArgs {
    std::string input;
    std::string path;
    std::string out_dir;
    std::size_t frames = 0;
    double eps0 = 0.5;
    int max_halvings = 60;
};

// N points spaced evenly by arc length along the polyline.
std::vector<double> resample(const std::vector<double>& xy, std::size_t n) {
    const std::size_t m = xy.size() / 2;
    if (n == 0 || m == 0) return xy;
    std::vector<double> cumulative(m, 0.0);
    for (std::size_t k = 1; k < m; ++k) {
        cumulative[k] = cumulative[k - 1] + std::hypot(xy[2 * k] - xy[2 * k - 2], xy[2 * k + 1] - xy[2 * k - 1]);
    }
    const double total = cumulative.back();
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (total == 0.0 || m == 1) {
            out.push_back(xy[0]);
            out.push_back(xy[1]);
            continue;
        }
        const double s = n == 1 ? 0.0 : total * static_cast<double>(i) / static_cast<double>(n - 1);
        std::size_t k = 1;
        while (k < m - 1 && cumulative[k] < s) ++k;
        const double span = cumulative[k] - cumulative[k - 1];
        const double t = span > 0 ? (s - cumulative[k - 1]) / span : 0.0;
        out.push_back(xy[2 * k - 2] + t * (xy[2 * k] - xy[2 * k - 2]));
        out.push_back(xy[2 * k - 1] + t * (xy[2 * k + 1] - xy[2 * k - 1]));
    }
    return out;
}

int run_homotopy(const Global& g, const HomotopyArgs& a) {
    const Problem problem = load_problem(a.input);
    std::vector<double> xy;
    try {
        const json pts = json::parse(read_file(a.path));
        if (!pts.is_array() || pts.empty()) throw Failure{exit_usage, a.path + ": expected a non-empty array of [x, y]"};
        for (const auto& p : pts) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                throw Failure{exit_usage, a.path + ": expected a non-empty array of [x, y]"};
            }
            xy.push_back(p[0].get<double>());
            xy.push_back(p[1].get<double>());
        }
    } catch (const json::exception& e) {
        throw Failure{exit_usage, a.path + ": " + e.what()};
    }
    xy = resample(xy, a.frames);
    const se_star_options opts = star_options(g, a.eps0, a.max_halvings, "");
    se_path* raw = nullptr;
    std::size_t bad = SIZE_MAX;
    const se_status status = se_homotopy(problem.get(), &opts, xy.data(), xy.size() / 2, &raw, &bad);
    const Path path(raw);
    if (status != SE_OK && bad != SIZE_MAX) {
        throw Failure{exit_for(status), "frame " + std::to_string(bad) + ": " + se_last_error()};
    }
    check(status, a.input);

    const std::size_t n = se_path_frame_count(path.get());
    std::size_t invalid = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!se_embedding_is_valid(se_path_frame(path.get(), k))) {
            if (invalid == 0) note(g, "frame " + std::to_string(k) + " failed validation");
            ++invalid;
        }
    }
    char* summary_raw = nullptr;
    check(se_path_to_json(path.get(), &summary_raw), "summary");
    const std::string summary = OwnedString(summary_raw).get();
    if (invalid > 0) {
        if (g.json_out) std::cout << summary << "\n";
        throw Failure{exit_failed, std::to_string(invalid) + " of " + std::to_string(n) + " frames invalid"};
    }

    // Render everything before touching the output directory.
    double viewport[4];
    se_path_viewport(path.get(), viewport);
    std::vector<std::pair<std::string, std::string>> files;
    for (std::size_t k = 0; k < n; ++k) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "frame_%04zu", k);
        const se_embedding* frame = se_path_frame(path.get(), k);
        files.emplace_back(std::string(stem) + ".json", to_json(frame));
        files.emplace_back(std::string(stem) + ".svg", to_svg(frame, true, viewport));
    }
    files.emplace_back("path.json", summary);
    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec) throw Failure{exit_usage, "cannot create " + a.out_dir};
    for (const auto& [name, content] : files) write_atomic(fs::path(a.out_dir) / name, content);
    if (g.json_out) std::cout << summary << "\n";
    note(g, std::to_string(n) + " valid frames written to " + a.out_dir);
    return exit_ok;
}

struct RenderArgs {
    std::string input;
    std::string output;
    bool kernel = false;
};

int run_render(const Global&, const RenderArgs& a) {
    const std::string text = read_file(a.input);
    se_embedding* raw = nullptr;
    check(se_embedding_parse(text.c_str(), &raw), a.input);
    const Embedding embedding(raw);
    emit(a.output, to_svg(embedding.get(), a.kernel, nullptr));
    return exit_ok;
}

// Runs `one(input, output)` for every *.json in the batch directory. Output
// names derive from the input stem, so results never depend on order.
template <typename Fn>
int run_batch(const Global& g, const std::string& out_dir, const std::string& suffix, Fn one) {
    std::vector<fs::path> inputs;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(g.batch, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") inputs.push_back(entry.path());
    }
    if (ec) throw Failure{exit_usage, "cannot list " + g.batch};
    std::sort(inputs.begin(), inputs.end());
    if (out_dir.empty()) throw Failure{exit_usage, "--batch needs -o <directory>"};
    fs::create_directories(out_dir, ec);
    if (ec) throw Failure{exit_usage, "cannot create " + out_dir};
    int worst = exit_ok;
    for (const auto& in : inputs) {
        const std::string out = (fs::path(out_dir) / (in.stem().string() + suffix)).string();
        int code = exit_ok;
        try {
            code = one(in.string(), out);
        } catch (const Failure& f) {
            std::cerr << in.filename().string() << ": " << f.message << "\n";
            code = f.code;
        }
        worst = std::max(worst, code);
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Straight-line embeddings of triangulated disks with convex or star-shaped boundaries"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    double tol_flag = 0.0;
    auto* tol_opt = app.add_option("--tol", tol_flag, "Relative residual tolerance (default 1e-10, env STAREMBED_TOL)")
                        ->check(CLI::PositiveNumber);
    app.add_flag("--quiet,-q", g.quiet, "Suppress notes on stderr");
    app.add_flag("--json", g.json_out, "Machine-readable output on stdout");
    app.add_option("--batch", g.batch, "Process every *.json in this directory; -o names the output directory")
        ->check(CLI::ExistingDirectory);
    app.add_flag_function("--version", [](std::int64_t) {
        std::cout << se_version() << "\n";
        std::exit(0);
    }, "Print the library version");

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate-mesh", "Check a problem's mesh and boundary");
    validate->add_option("input", va.input, "Problem document");
    validate->add_option("-o,--output", va.output, "Write the JSON report here");

    EmbedArgs ea;
    auto* embed = app.add_subcommand("embed", "Barycentric embedding into a convex boundary");
    embed->add_option("input", ea.input, "Problem document");
    embed->add_option("-o,--output", ea.output, "Embedding document (default stdout)");
    embed->add_option("--svg", ea.svg, "Also write an SVG figure");
    embed->add_option("--scheme", ea.scheme, "Weights: file (from the document), uniform or random")
        ->check(CLI::IsMember({"file", "uniform", "random"}));
    embed->add_option("--seed", ea.seed, "Seed for --scheme random");

    StarArgs sa;
    auto* star = app.add_subcommand("embed-star", "Epsilon-halving embedding into a star-shaped boundary");
    star->add_option("input", sa.input, "Problem document");
    star->add_option("-o,--output", sa.output, "Embedding document (default stdout)");
    star->add_option("--svg", sa.svg, "Also write an SVG figure");
    star->add_option("--eps0", sa.eps0, "Initial epsilon");
    star->add_option("--max-halvings", sa.max_halvings, "Halving budget");
    star->add_option("--eye", sa.eye, "Eye point x,y inside the kernel");

    DiagnoseArgs da;
    auto* diagnose = app.add_subcommand("diagnose", "Spectral diagnostics of the epsilon system");
    diagnose->add_option("input", da.input, "Problem document");
    diagnose->add_option("-o,--output", da.output, "Write the JSON document here");
    diagnose->add_option("--eps-sweep", da.sweep, "Comma-separated epsilons");
    diagnose->add_option("--flavor", da.flavor, "Coupling: uniform or eye")->check(CLI::IsMember({"uniform", "eye"}));
    diagnose->add_option("--budget", da.budget, "Largest interior count for the dense eigensolver");

    HomotopyArgs ha;
    auto* homotopy = app.add_subcommand("homotopy", "Move the reflex vertex of a quadrilateral along a path");
    homotopy->add_option("input", ha.input, "Problem document (non-convex quadrilateral)")->required();
    homotopy->add_option("--path", ha.path, "JSON array of [x, y] reflex positions")->required();
    homotopy->add_option("--frames", ha.frames, "Resample the path to this many frames by arc length");
    homotopy->add_option("--out-dir", ha.out_dir, "Directory for frame documents and SVGs")->required();
    homotopy->add_option("--eps0", ha.eps0, "Initial epsilon of the base embedding");
    homotopy->add_option("--max-halvings", ha.max_halvings, "Halving budget of the base embedding");

    RenderArgs ra;
    auto* render = app.add_subcommand("render", "SVG figure of an embedding document");
    render->add_option("input", ra.input, "Embedding document");
    render->add_option("-o,--output", ra.output, "SVG file (default stdout)");
    render->add_flag("--kernel", ra.kernel, "Overlay the boundary kernel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }
    if (*tol_opt) g.tol = tol_flag;

    auto need_input = [](const std::string& in) {
        if (in.empty()) throw Failure{exit_usage, "missing input file"};
    };

    try {
        const bool batch = !g.batch.empty();
        if (batch && (*homotopy || *render)) throw Failure{exit_usage, "--batch does not apply to this command"};
        if (*validate) {
            if (batch) {
                return run_batch(g, va.output, ".report.json", [&](const std::string& in, const std::string& out) {
                    Global inner = g;
                    inner.json_out = true;
                    return run_validate(inner, {in, out});
                });
            }
            need_input(va.input);
            return run_validate(g, va);
        }
        if (*embed) {
            if (batch) {
                return run_batch(g, ea.output, ".embedding.json", [&](const std::string& in, const std::string& out) {
                    EmbedArgs one = ea;
                    one.input = in;
                    one.output = out;
                    one.svg.clear();
                    return run_embed(g, one);
                });
            }
            need_input(ea.input);
            return run_embed(g, ea);
        }
        if (*star) {
            if (batch) {
                return run_batch(g, sa.output, ".embedding.json", [&](const std::string& in, const std::string& out) {
                    StarArgs one = sa;
                    one.input = in;
                    one.output = out;
                    one.svg.clear();
                    return run_star(g, one);
                });
            }
            need_input(sa.input);
            return run_star(g, sa);
        }
        if (*diagnose) {
            if (batch) {
                return run_batch(g, da.output, ".diagnostics.json", [&](const std::string& in, const std::string& out) {
                    DiagnoseArgs one = da;
                    one.input = in;
                    one.output = out;
                    return run_diagnose(g, one);
                });
            }
            need_input(da.input);
            return run_diagnose(g, da);
        }
        if (*homotopy) return run_homotopy(g, ha);
        need_input(ra.input);
        return run_render(g, ra);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    }
}
