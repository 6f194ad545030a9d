#pragma once

// Map tiles addressed by (z, x, y). Level z covers the map with base^z by
// base^z tiles, each `size` pixels square, so tile (x, y) is the window of
// the full map at resolution size * base^z starting at pixel (x*size, y*size).

#include "image.hpp"
#include "map.hpp"

#include <charconv>
#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rivermap {

inline constexpr int kMinTileSize = 16;
inline constexpr int kMaxTileSize = 1024;
inline constexpr int kDefaultTileSize = 256;

struct TileRequest {
    std::uint64_t seed = 0;
    MapStyle style;
    int z = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;
    int size = kDefaultTileSize;

    bool operator==(const TileRequest&) const = default;
};

class TileRequestError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Tiles per axis at level z, or nullopt once size * base^z passes the resolution limit.
inline std::optional<std::int64_t> tiles_per_axis(int base, int z, int size) {
    std::int64_t n = 1;
    for (int i = 0; i < z; ++i) {
        if (n > kMaxResolution / base) return std::nullopt;
        n *= base;
    }
    if (n > kMaxResolution / size) return std::nullopt;
    return n;
}

inline void validate(const TileRequest& req, int base) {
    if (req.size < kMinTileSize || req.size > kMaxTileSize)
        throw TileRequestError("size must be in [" + std::to_string(kMinTileSize) + ", " +
                               std::to_string(kMaxTileSize) + "]");
    if (req.z < 0) throw TileRequestError("z must be >= 0");
    const auto n = tiles_per_axis(base, req.z, req.size);
    if (!n) throw TileRequestError("z too large for this tile size");
    if (req.x < 0 || req.x >= *n || req.y < 0 || req.y >= *n)
        throw TileRequestError("x and y must be in [0, " + std::to_string(*n) + ")");
}

inline PixelWindow tile_window(const TileRequest& req, int base) {
    validate(req, base);
    const std::int64_t res = *tiles_per_axis(base, req.z, req.size) * req.size;
    return {res, res, req.x * req.size, req.y * req.size, req.size, req.size};
}

namespace detail {

template <class T>
T parse_number(std::string_view name, std::string_view text) {
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
        throw TileRequestError("invalid " + std::string(name) + ": '" + std::string(text) + "'");
    return value;
}

}  // namespace detail

/// Builds a request from query parameters. `get` returns nullopt for absent keys.
inline TileRequest parse_tile_request(const std::function<std::optional<std::string>(std::string_view)>& get,
                                      int base) {
    TileRequest req;
    if (auto v = get("seed")) req.seed = detail::parse_number<std::uint64_t>("seed", *v);
    if (auto v = get("variant")) {
        auto style = parse_style(*v);
        if (!style) throw TileRequestError("unknown variant '" + *v + "'");
        req.style = *style;
    }
    if (auto v = get("z")) req.z = detail::parse_number<int>("z", *v);
    if (auto v = get("x")) req.x = detail::parse_number<std::int64_t>("x", *v);
    if (auto v = get("y")) req.y = detail::parse_number<std::int64_t>("y", *v);
    if (auto v = get("size")) req.size = detail::parse_number<int>("size", *v);
    validate(req, base);
    return req;
}

inline std::string cache_key(const TileRequest& req) {
    return std::to_string(req.seed) + '/' + to_string(req.style) + '/' + std::to_string(req.z) + '/' +
           std::to_string(req.x) + '/' + std::to_string(req.y) + '/' + std::to_string(req.size);
}

struct TileCacheStats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t coalesced = 0;  ///< waited for an identical in-flight render
    std::uint64_t renders = 0;
    std::uint64_t failures = 0;
    std::uint64_t evictions = 0;
    std::size_t entries = 0;
    std::size_t capacity = 0;
};

using TileBytes = std::shared_ptr<const std::vector<std::uint8_t>>;

/// LRU of encoded tiles. Concurrent requests for a missing key share one render.
class TileCache {
public:
    explicit TileCache(std::size_t capacity) : capacity_(capacity) {}

    template <class Render>
    TileBytes get_or_render(const std::string& key, Render&& render) {
        std::unique_lock lock(mu_);
        if (auto it = index_.find(key); it != index_.end()) {
            ++stats_.hits;
            lru_.splice(lru_.begin(), lru_, it->second);
            return it->second->second;
        }
        if (auto it = inflight_.find(key); it != inflight_.end()) {
            ++stats_.coalesced;
            auto pending = it->second;
            lock.unlock();
            return pending.get();
        }
        ++stats_.misses;
        std::promise<TileBytes> promise;
        inflight_.emplace(key, promise.get_future().share());
        lock.unlock();

        TileBytes bytes;
        try {
            bytes = std::make_shared<const std::vector<std::uint8_t>>(render());
        } catch (...) {
            lock.lock();
            ++stats_.failures;
            inflight_.erase(key);
            lock.unlock();
            promise.set_exception(std::current_exception());
            throw;
        }

        lock.lock();
        ++stats_.renders;
        inflight_.erase(key);
        if (capacity_ > 0) {
            lru_.emplace_front(key, bytes);
            index_[key] = lru_.begin();
            while (lru_.size() > capacity_) {
                index_.erase(lru_.back().first);
                lru_.pop_back();
                ++stats_.evictions;
            }
        }
        lock.unlock();
        promise.set_value(bytes);
        return bytes;
    }

    TileCacheStats stats() const {
        std::lock_guard lock(mu_);
        TileCacheStats s = stats_;
        s.entries = lru_.size();
        s.capacity = capacity_;
        return s;
    }

private:
    using Entry = std::pair<std::string, TileBytes>;

    std::size_t capacity_;
    mutable std::mutex mu_;
    std::list<Entry> lru_;
    std::unordered_map<std::string, std::list<Entry>::iterator> index_;
    std::map<std::string, std::shared_future<TileBytes>> inflight_;
    TileCacheStats stats_;
};

struct TileServiceConfig {
    int base = 5;
    std::size_t cache_entries = 512;
    int render_threads = 1;  ///< per tile; requests already run in parallel
    Constants k;
};

inline void validate(const TileServiceConfig& cfg) {
    if (cfg.base < 2 || cfg.base > 64) throw std::invalid_argument("tile base must be in [2, 64]");
    if (cfg.render_threads < 1) throw std::invalid_argument("render threads must be >= 1");
}

/// Renders tiles to PNG bytes through the cache.
class TileService {
public:
    explicit TileService(TileServiceConfig cfg = {})
        : cfg_((validate(cfg), cfg)), cache_(cfg.cache_entries), started_(std::chrono::steady_clock::now()) {}

    const TileServiceConfig& config() const noexcept { return cfg_; }

    GenConfig gen_config(const TileRequest& req) const {
        GenConfig g;
        g.master_seed = req.seed;
        g.variant = req.style.variant;
        g.k = cfg_.k;
        return g;
    }

    Raster render_raster(const TileRequest& req) const {
        return render_map(tile_window(req, cfg_.base), gen_config(req), req.style.shape,
                          RenderOptions{cfg_.render_threads})
            .raster;
    }

    TileBytes tile(const TileRequest& req) {
        validate(req, cfg_.base);
        return cache_.get_or_render(cache_key(req), [&] { return encode_png(to_image(render_raster(req))); });
    }

    TileCacheStats cache_stats() const { return cache_.stats(); }

    double uptime_seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    }

private:
    TileServiceConfig cfg_;
    TileCache cache_;
    std::chrono::steady_clock::time_point started_;
};

}  // namespace rivermap
