#pragma once

// HTTP front end for TileService:
//   GET /tile?seed=&variant=&z=&x=&y=&size=   -> image/png
//   GET /healthz                               -> JSON

#include "tile_service.hpp"

#include <httplib.h>
#include <json.hpp>

#include <string>

#ifndef RIVERMAP_VERSION
#define RIVERMAP_VERSION "0.0.0"
#endif

namespace rivermap {

inline nlohmann::json to_json(const TileCacheStats& s) {
    return {{"hits", s.hits},           {"misses", s.misses},   {"coalesced", s.coalesced},
            {"renders", s.renders},     {"failures", s.failures}, {"evictions", s.evictions},
            {"entries", s.entries},     {"capacity", s.capacity}};
}

inline nlohmann::json health(const TileService& svc) {
    return {{"status", "ok"},
            {"version", RIVERMAP_VERSION},
            {"uptime_seconds", svc.uptime_seconds()},
            {"tile_base", svc.config().base},
            {"cache", to_json(svc.cache_stats())}};
}

namespace detail {

inline void json_error(httplib::Response& res, int status, const std::string& message) {
    res.status = status;
    res.set_content(nlohmann::json{{"error", message}}.dump(), "application/json");
}

}  // namespace detail

/// Registers the routes on `server`. `static_dir` (optional) is mounted at /.
inline void mount(httplib::Server& server, TileService& svc, const std::string& static_dir = {}) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Get("/tile", [&svc](const httplib::Request& req, httplib::Response& res) {
        TileRequest tile;
        try {
            tile = parse_tile_request(
                [&req](std::string_view key) -> std::optional<std::string> {
                    const std::string k(key);
                    if (!req.has_param(k)) return std::nullopt;
                    return req.get_param_value(k);
                },
                svc.config().base);
        } catch (const TileRequestError& e) {
            detail::json_error(res, 400, e.what());
            return;
        }
        try {
            const TileBytes bytes = svc.tile(tile);
            res.set_header("Cache-Control", "public, max-age=31536000, immutable");
            res.set_content(reinterpret_cast<const char*>(bytes->data()), bytes->size(), "image/png");
        } catch (const std::exception& e) {
            detail::json_error(res, 500, std::string("render failed: ") + e.what());
        }
    });
    server.Get("/healthz", [&svc](const httplib::Request&, httplib::Response& res) {
        res.set_header("Cache-Control", "no-store");
        res.set_content(health(svc).dump(), "application/json");
    });
    if (!static_dir.empty() && !server.set_mount_point("/", static_dir))
        throw std::invalid_argument("static directory not found: " + static_dir);
}

}  // namespace rivermap
