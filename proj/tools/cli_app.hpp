#pragma once

// rivermap command line: render, bench, stats, serve.
//
// Exit codes: 0 ok, 1 I/O or runtime failure, 2 invalid flags,
// 3 stats found cycles in a base-variant map.

#include <rivermap/http.hpp>
#include <rivermap/image.hpp>
#include <rivermap/map.hpp>
#include <rivermap/river_stats.hpp>

#include <CLI11.hpp>
#include <zlib.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace rivermap::cli {

enum Exit : int { kOk = 0, kRuntimeError = 1, kUsage = 2, kCheckFailed = 3 };

struct CliConfig {
    std::string command = "render";
    std::uint64_t seed = 0;
    int size = 1023;
    double zoom = 1.0;
    std::array<double, 2> center{0.5, 0.5};
    MapStyle style;
    Constants k;
    double mouth_probability = 1.0;
    std::optional<std::array<double, 4>> corners;
    std::string output = "map.ppm";
    ImageFormat format = ImageFormat::Ppm;
    int threads = 1;
    // bench
    int reps = 5;
    double bench_zoom = 125.0;
    // stats
    int count = 1;
    // serve
    std::string host = "127.0.0.1";
    int port = 8080;
    int tile_base = 5;
    std::size_t cache_entries = 512;
    std::string static_dir;

    bool operator==(const CliConfig&) const = default;

    GenConfig gen() const {
        GenConfig g;
        g.master_seed = seed;
        g.variant = style.variant;
        g.k = k;
        g.mouth_probability = mouth_probability;
        g.corner_altitudes = corners;
        return g;
    }

    Viewport viewport() const { return {center[0], center[1], zoom, size, size}; }
};

struct ParseResult {
    std::optional<CliConfig> config;
    bool print_config = false;
    int exit_code = kOk;
    std::string message;
};

/// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string format_name(ImageFormat f) { return f == ImageFormat::Png ? "png" : "ppm"; }

/// Flags that reproduce `cfg` exactly when parsed again.
inline std::vector<std::string> to_args(const CliConfig& cfg) {
    std::vector<std::string> a{cfg.command,
                               "--seed", std::to_string(cfg.seed),
                               "--size", std::to_string(cfg.size),
                               "--zoom", format_double(cfg.zoom),
                               "--center", format_double(cfg.center[0]) + "," + format_double(cfg.center[1]),
                               "--variant", to_string(cfg.style),
                               "--mouth-probability", format_double(cfg.mouth_probability),
                               "--threads", std::to_string(cfg.threads)};
    const std::array<double, 8> ks{cfg.k.k1, cfg.k.k2, cfg.k.k3, cfg.k.k4, cfg.k.k5, cfg.k.k6, cfg.k.k7, cfg.k.k8};
    for (std::size_t i = 0; i < ks.size(); ++i) {
        a.push_back("--k" + std::to_string(i + 1));
        a.push_back(format_double(ks[i]));
    }
    if (cfg.corners) {
        std::string v;
        for (double h : *cfg.corners) v += (v.empty() ? "" : ",") + format_double(h);
        a.insert(a.end(), {"--corner-altitudes", v});
    }
    if (cfg.command == "render") a.insert(a.end(), {"-o", cfg.output, "--format", format_name(cfg.format)});
    if (cfg.command == "bench")
        a.insert(a.end(), {"--reps", std::to_string(cfg.reps), "--bench-zoom", format_double(cfg.bench_zoom)});
    if (cfg.command == "stats") a.insert(a.end(), {"--count", std::to_string(cfg.count)});
    if (cfg.command == "serve") {
        a.insert(a.end(), {"--host", cfg.host, "--port", std::to_string(cfg.port), "--tile-base",
                           std::to_string(cfg.tile_base), "--cache-entries", std::to_string(cfg.cache_entries)});
        if (!cfg.static_dir.empty()) a.insert(a.end(), {"--static", cfg.static_dir});
    }
    return a;
}

inline std::string join_args(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
    return s;
}

inline ParseResult parse(std::vector<std::string> args) {
    CliConfig cfg;
    cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    std::string variant = "base";
    bool islands = false;
    std::vector<double> center, corners;
    std::optional<std::string> format;
    bool print_config = false;

    CLI::App app{"rivermap: procedural terrain and river maps", "rivermap"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--size", cfg.size, "image width and height in pixels")->check(CLI::Range(1, 1 << 16));
        sub->add_option("--zoom", cfg.zoom, "magnification; 1 shows the whole map")
            ->check(CLI::PositiveNumber);
        sub->add_option("--center", center, "view centre x,y in map units")->delimiter(',')->expected(2);
        sub->add_option("--variant", variant, "base, islands, penrose or penrose-islands")
            ->check(CLI::IsMember({"base", "islands", "penrose", "penrose-islands"}));
        sub->add_flag("--islands", islands, "enable island forks (same as the islands variants)");
        const std::array<std::pair<const char*, double*>, 8> ks{{{"--k1", &cfg.k.k1}, {"--k2", &cfg.k.k2},
                                                                 {"--k3", &cfg.k.k3}, {"--k4", &cfg.k.k4},
                                                                 {"--k5", &cfg.k.k5}, {"--k6", &cfg.k.k6},
                                                                 {"--k7", &cfg.k.k7}, {"--k8", &cfg.k.k8}}};
        for (auto [name, ptr] : ks) sub->add_option(name, *ptr);
        sub->add_option("--mouth-probability", cfg.mouth_probability, "chance a qualifying river mouth opens");
        sub->add_option("--corner-altitudes", corners, "four root altitudes")->delimiter(',')->expected(4);
        sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1, 1024));
        sub->add_flag("--print-config", print_config, "print the effective flags before running");
    };

    auto* render = app.add_subcommand("render", "render a map image");
    add_common(render);
    render->add_option("-o,--output", cfg.output, "output file");
    render->add_option("--format", format, "ppm or png (default: from the file extension)")
        ->check(CLI::IsMember({"ppm", "png"}));

    auto* bench = app.add_subcommand("bench", "time zoom 1 against a deep zoom at equal pixel count");
    add_common(bench);
    bench->add_option("--reps", cfg.reps, "repetitions per zoom")->check(CLI::Range(1, 1000));
    bench->add_option("--bench-zoom", cfg.bench_zoom, "the deep zoom")->check(CLI::PositiveNumber);

    auto* stats = app.add_subcommand("stats", "river network statistics as CSV");
    add_common(stats);
    stats->add_option("--count", cfg.count, "number of consecutive seeds")->check(CLI::Range(1, 100000));

    auto* serve = app.add_subcommand("serve", "HTTP tile service");
    add_common(serve);
    serve->add_option("--host", cfg.host, "bind address")->envname("RIVERMAP_HOST");
    serve->add_option("--port", cfg.port, "bind port")->envname("RIVERMAP_PORT")->check(CLI::Range(0, 65535));
    serve->add_option("--tile-base", cfg.tile_base, "tiles per axis multiply by this per level")
        ->check(CLI::Range(2, 64));
    serve->add_option("--cache-entries", cfg.cache_entries, "tile cache capacity");
    serve->add_option("--static", cfg.static_dir, "directory served at /");

    ParseResult result;
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        result.message = app.help();
        return result;
    } catch (const CLI::CallForAllHelp& e) {
        result.message = app.help("", CLI::AppFormatMode::All);
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = kUsage;
        result.message = std::string(e.what()) + "\n\n" + app.help();
        return result;
    }

    for (auto* sub : {render, bench, stats, serve})
        if (sub->parsed()) cfg.command = sub->get_name();
    if (!center.empty()) cfg.center = {center[0], center[1]};
    if (!corners.empty()) cfg.corners = std::array<double, 4>{corners[0], corners[1], corners[2], corners[3]};
    cfg.style = *parse_style(variant);
    if (islands) cfg.style.variant = Variant::IslandsInFjords;
    if (format)
        cfg.format = *format == "png" ? ImageFormat::Png : ImageFormat::Ppm;
    else
        cfg.format = cfg.output.size() >= 4 && cfg.output.substr(cfg.output.size() - 4) == ".png" ? ImageFormat::Png
                                                                                                 : ImageFormat::Ppm;

    try {
        validate(cfg.gen());
        pixel_window(cfg.viewport());
        if (cfg.command == "bench") pixel_window({cfg.center[0], cfg.center[1], cfg.bench_zoom, cfg.size, cfg.size});
    } catch (const std::invalid_argument& e) {
        result.exit_code = kUsage;
        result.message = std::string("invalid configuration: ") + e.what();
        return result;
    }
    result.config = cfg;
    result.print_config = print_config;
    return result;
}

/// Checksum of a raster's pixels, used to compare bench renders.
inline std::uint32_t raster_digest(const Raster& r) {
    const auto bytes = encode_ppm(to_image(r));
    return std::uint32_t(crc32(0L, bytes.data(), uInt(bytes.size())));
}

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

inline int run_render(const CliConfig& cfg, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = render_map(cfg.viewport(), cfg.gen(), cfg.style.shape, RenderOptions{cfg.threads});
    const double ms = elapsed_ms(t0);
    write_image(result.raster, cfg.output, cfg.format);
    out << "output=" << cfg.output << "\n"
        << "elapsed_ms=" << ms << "\n"
        << "visited=" << result.stats.visited << "\n"
        << "leaves=" << result.stats.leaves << "\n";
    return kOk;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

struct BenchResult {
    double median_ms_low = 0;
    double median_ms_high = 0;
    std::uint64_t visited_low = 0;
    std::uint64_t visited_high = 0;
    std::uint32_t digest_low = 0;
    std::uint32_t digest_high = 0;

    double ratio() const { return median_ms_high / median_ms_low; }
};

/// Alternates zoom 1 and the deep zoom, `reps` times each.
inline BenchResult bench(const CliConfig& cfg) {
    const GenConfig gen = cfg.gen();
    const Viewport low{0.5, 0.5, 1.0, cfg.size, cfg.size};
    const Viewport high{cfg.center[0], cfg.center[1], cfg.bench_zoom, cfg.size, cfg.size};
    std::vector<double> t_low, t_high;
    BenchResult b;
    for (int i = 0; i < cfg.reps; ++i) {
        for (bool deep : {false, true}) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto r = render_map(deep ? high : low, gen, cfg.style.shape, RenderOptions{cfg.threads});
            (deep ? t_high : t_low).push_back(elapsed_ms(t0));
            (deep ? b.visited_high : b.visited_low) = r.stats.visited;
            const auto digest = raster_digest(r.raster);
            auto& slot = deep ? b.digest_high : b.digest_low;
            if (i > 0 && slot != digest) throw std::runtime_error("bench renders differ between repetitions");
            slot = digest;
        }
    }
    b.median_ms_low = median(t_low);
    b.median_ms_high = median(t_high);
    return b;
}

inline int run_bench(const CliConfig& cfg, std::ostream& out) {
    const BenchResult b = bench(cfg);
    char digest_low[16], digest_high[16];
    std::snprintf(digest_low, sizeof digest_low, "%08x", b.digest_low);
    std::snprintf(digest_high, sizeof digest_high, "%08x", b.digest_high);
    out << "seed=" << cfg.seed << "\n"
        << "variant=" << to_string(cfg.style) << "\n"
        << "size=" << cfg.size << "\n"
        << "reps=" << cfg.reps << "\n"
        << "threads=" << cfg.threads << "\n"
        << "zoom_low=1\n"
        << "zoom_high=" << format_double(cfg.bench_zoom) << "\n"
        << "median_ms_low=" << b.median_ms_low << "\n"
        << "median_ms_high=" << b.median_ms_high << "\n"
        << "ratio=" << b.ratio() << "\n"
        << "visited_low=" << b.visited_low << "\n"
        << "visited_high=" << b.visited_high << "\n"
        << "digest_low=" << digest_low << "\n"
        << "digest_high=" << digest_high << "\n";
    return kOk;
}

struct StatsRow {
    std::uint64_t seed = 0;
    RiverStats pixels;
    RiverNetwork network;
};

inline StatsRow stats_for(const CliConfig& cfg, std::uint64_t seed) {
    CliConfig c = cfg;
    c.seed = seed;
    const PixelWindow win = pixel_window(c.viewport());
    StatsRow row;
    row.seed = seed;
    row.pixels = analyze_rivers(render_map(win, c.gen(), c.style.shape, RenderOptions{c.threads}).raster);
    row.network = map_network(win, c.gen(), c.style.shape);
    return row;
}

inline constexpr const char* kStatsHeader =
    "seed,variant,size,river_pixels,land_river_pixels,components,components_touching_sea,"
    "network_components,cyclic_components,cyclic_at_or_above_k7,pixel_loops";

/// One CSV row per seed. Base-variant maps must have no cyclic components.
inline int run_stats(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    out << kStatsHeader << "\n";
    std::size_t base_cycles = 0;
    for (int i = 0; i < cfg.count; ++i) {
        const auto row = stats_for(cfg, cfg.seed + std::uint64_t(i));
        out << row.seed << ',' << to_string(cfg.style) << ',' << cfg.size << ',' << row.pixels.river_pixels << ','
            << row.pixels.land_river_pixels << ',' << row.pixels.components.size() << ','
            << row.pixels.touching_sea() << ',' << row.network.components.size() << ','
            << row.network.cyclic() << ',' << row.network.cyclic_at_or_above(cfg.k.k7) << ','
            << row.pixels.cyclic() << "\n";
        if (cfg.style.variant == Variant::Base) base_cycles += row.network.cyclic();
    }
    if (base_cycles > 0) {
        err << "error: " << base_cycles << " cyclic river components in a base-variant map\n";
        return kCheckFailed;
    }
    return kOk;
}

inline int run_serve(const CliConfig& cfg, std::ostream& out) {
    TileServiceConfig sc;
    sc.base = cfg.tile_base;
    sc.cache_entries = cfg.cache_entries;
    sc.k = cfg.k;
    TileService svc(sc);
    httplib::Server server;
    server.new_task_queue = [threads = cfg.threads] { return new httplib::ThreadPool(std::size_t(threads)); };
    mount(server, svc, cfg.static_dir);
    const int port = cfg.port == 0 ? server.bind_to_any_port(cfg.host) : (server.bind_to_port(cfg.host, cfg.port) ? cfg.port : -1);
    if (port < 0) throw std::runtime_error("cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
    out << "listening on http://" << cfg.host << ":" << port << std::endl;
    return server.listen_after_bind() ? kOk : kRuntimeError;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const ParseResult parsed = parse(args);
    if (!parsed.config) {
        (parsed.exit_code == kOk ? out : err) << parsed.message << "\n";
        return parsed.exit_code;
    }
    const CliConfig& cfg = *parsed.config;
    if (parsed.print_config) out << "config=" << join_args(to_args(cfg)) << "\n";
    try {
        if (cfg.command == "render") return run_render(cfg, out);
        if (cfg.command == "bench") return run_bench(cfg, out);
        if (cfg.command == "stats") return run_stats(cfg, out, err);
        return run_serve(cfg, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
}

}  // namespace rivermap::cli
