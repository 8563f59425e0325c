#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "splitrad/dynamics/dynamics.hpp"

// Equipotential plots. Grid values use plain double precision: the plot is
// qualitative and nothing here is certified.

namespace splitrad {

struct Window {
    double x0, x1, y0, y1;
};

struct ContourLoop {
    std::vector<std::pair<double, double>> points;
    bool closed = false;
};

struct ContourLevel {
    double level;
    std::vector<ContourLoop> loops;
};

struct Equipotential {
    Window window;
    int cols, rows;
    std::vector<ContourLevel> levels;
};

/// Machine-precision escape rate lambda_inf(z), 0 when no escape within
/// max_iter steps.
class FloatEscape {
public:
    explicit FloatEscape(const QPoly& f, int max_iter = 500) : max_iter_(max_iter) {
        d_ = f.degree();
        if (d_ < 2) throw DomainError("degree must be at least 2");
        for (const auto& a : f.coeffs()) c_.push_back(a.to_double());
        const double lead = std::abs(c_.back());
        double s = 0;
        for (int i = 0; i < d_; ++i) s += std::abs(c_[i]) / lead;
        const double r = std::max({1.0, 2 * s, std::pow(4 / lead, 1.0 / (d_ - 1))});
        bailout_ = std::max(1e8, r * r);
        shift_ = std::log(lead) / (d_ - 1);
    }

    double operator()(std::complex<double> z) const {
        double scale = 1;
        for (int n = 0; n < max_iter_; ++n) {
            if (std::abs(z) > bailout_) return std::max(0.0, (std::log(std::abs(z)) + shift_) / scale);
            std::complex<double> w = c_[d_];
            for (int i = d_ - 1; i >= 0; --i) w = w * z + c_[i];
            z = w;
            scale *= d_;
        }
        return 0;
    }

private:
    int d_;
    int max_iter_;
    std::vector<double> c_;
    double bailout_;
    double shift_;
};

namespace detail {

/// Row-major (rows+1) x (cols+1) samples, rows split across workers.
inline std::vector<double> escape_grid(const FloatEscape& lam, const Window& w, int cols, int rows) {
    const int nx = cols + 1, ny = rows + 1;
    std::vector<double> g(static_cast<std::size_t>(nx) * ny);
    auto fill = [&](int r0, int r1) {
        for (int j = r0; j < r1; ++j) {
            const double y = w.y0 + (w.y1 - w.y0) * j / rows;
            for (int i = 0; i < nx; ++i)
                g[static_cast<std::size_t>(j) * nx + i] = lam({w.x0 + (w.x1 - w.x0) * i / cols, y});
        }
    };
    const int threads = static_cast<int>(std::min<unsigned>(configured_threads(), static_cast<unsigned>(ny)));
    if (threads <= 1) {
        fill(0, ny);
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < threads; ++k) pool.emplace_back(fill, ny * k / threads, ny * (k + 1) / threads);
        for (auto& t : pool) t.join();
    }
    return g;
}

/// Marching squares for one level, segments joined into polylines.
/// Edge ids: 2*(j*nx+i) for the horizontal edge right of node (i,j),
/// 2*(j*nx+i)+1 for the vertical edge above it.
inline std::vector<ContourLoop> trace_level(const std::vector<double>& g, const Window& w, int cols, int rows,
                                            double level) {
    const int nx = cols + 1;
    auto at = [&](int i, int j) { return g[static_cast<std::size_t>(j) * nx + i]; };
    auto edge_point = [&](long id) {
        const long node = id / 2;
        const int i = static_cast<int>(node % nx), j = static_cast<int>(node / nx);
        const int i2 = id % 2 ? i : i + 1, j2 = id % 2 ? j + 1 : j;
        const double a = at(i, j), b = at(i2, j2);
        const double s = std::clamp((level - a) / (b - a), 0.0, 1.0);
        const double gx = i + s * (i2 - i), gy = j + s * (j2 - j);
        return std::make_pair(w.x0 + (w.x1 - w.x0) * gx / cols, w.y0 + (w.y1 - w.y0) * gy / rows);
    };

    std::vector<std::pair<long, long>> segs;
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            const long base = 2L * (static_cast<long>(j) * nx + i);
            const long bottom = base, left = base + 1, top = 2L * (static_cast<long>(j + 1) * nx + i),
                       right = 2L * (static_cast<long>(j) * nx + i + 1) + 1;
            const double v0 = at(i, j), v1 = at(i + 1, j), v2 = at(i + 1, j + 1), v3 = at(i, j + 1);
            const int mask = (v0 >= level) | (v1 >= level) << 1 | (v2 >= level) << 2 | (v3 >= level) << 3;
            const bool center_high = (v0 + v1 + v2 + v3) / 4 >= level;
            switch (mask) {
                case 0: case 15: break;
                case 1: case 14: segs.emplace_back(left, bottom); break;
                case 2: case 13: segs.emplace_back(bottom, right); break;
                case 3: case 12: segs.emplace_back(left, right); break;
                case 4: case 11: segs.emplace_back(right, top); break;
                case 6: case 9: segs.emplace_back(bottom, top); break;
                case 7: case 8: segs.emplace_back(left, top); break;
                case 5:
                    if (center_high) segs.emplace_back(left, top), segs.emplace_back(bottom, right);
                    else segs.emplace_back(left, bottom), segs.emplace_back(right, top);
                    break;
                case 10:
                    if (center_high) segs.emplace_back(left, bottom), segs.emplace_back(right, top);
                    else segs.emplace_back(left, top), segs.emplace_back(bottom, right);
                    break;
            }
        }

    std::map<long, std::vector<std::size_t>> by_edge;
    for (std::size_t s = 0; s < segs.size(); ++s) {
        by_edge[segs[s].first].push_back(s);
        by_edge[segs[s].second].push_back(s);
    }
    std::vector<bool> used(segs.size(), false);
    auto walk = [&](std::size_t s, long from) {
        std::vector<long> ids{from};
        long cur = from;
        while (true) {
            used[s] = true;
            cur = segs[s].first == cur ? segs[s].second : segs[s].first;
            ids.push_back(cur);
            std::size_t next = segs.size();
            for (auto t : by_edge[cur])
                if (!used[t]) next = t;
            if (next == segs.size()) break;
            s = next;
        }
        ContourLoop loop;
        loop.closed = ids.size() > 2 && ids.front() == ids.back();
        if (loop.closed) ids.pop_back();
        for (auto id : ids) loop.points.push_back(edge_point(id));
        return loop;
    };

    std::vector<ContourLoop> out;
    // Open chains start at a boundary edge so each is traced whole.
    for (const auto& [edge, list] : by_edge)
        if (list.size() == 1 && !used[list[0]]) out.push_back(walk(list[0], edge));
    for (std::size_t s = 0; s < segs.size(); ++s)
        if (!used[s]) out.push_back(walk(s, segs[s].first));
    return out;
}

}  // namespace detail

/// Contours of lambda_inf at the given levels over the window. `grid` is the
/// number of cells across; rows follow the aspect ratio.
inline Equipotential equipotential_contours(const QPoly& f, const Window& w, const std::vector<double>& levels,
                                            int grid) {
    if (!(std::isfinite(w.x0) && std::isfinite(w.x1) && std::isfinite(w.y0) && std::isfinite(w.y1)) ||
        !(w.x1 > w.x0) || !(w.y1 > w.y0))
        throw DomainError("degenerate window");
    if (grid < 2) throw DomainError("grid must be at least 2");
    for (double l : levels)
        if (!(l > 0) || !std::isfinite(l)) throw DomainError("levels must be positive");
    const int cols = grid;
    const int rows = std::max(2, static_cast<int>(std::lround(grid * (w.y1 - w.y0) / (w.x1 - w.x0))));
    const auto g = detail::escape_grid(FloatEscape(f), w, cols, rows);
    Equipotential out{w, cols, rows, {}};
    for (double l : levels) out.levels.push_back({l, detail::trace_level(g, w, cols, rows, l)});
    return out;
}

/// Even-odd test of a point against a closed loop.
inline bool loop_contains(const ContourLoop& loop, double x, double y) {
    bool in = false;
    const auto& p = loop.points;
    for (std::size_t i = 0, j = p.size() - 1; i < p.size(); j = i++) {
        if ((p[i].second > y) != (p[j].second > y) &&
            x < (p[j].first - p[i].first) * (y - p[i].second) / (p[j].second - p[i].second) + p[i].first)
            in = !in;
    }
    return in;
}

/// Longest chain of closed loops, one per level, each enclosing the next.
inline std::size_t nested_depth(const Equipotential& e) {
    // best[k][i]: longest chain ending at loop i of level k, read outward.
    std::vector<std::vector<std::size_t>> best(e.levels.size());
    std::size_t top = 0;
    for (std::size_t k = 0; k < e.levels.size(); ++k) {
        const auto& loops = e.levels[k].loops;
        best[k].assign(loops.size(), 0);
        for (std::size_t i = 0; i < loops.size(); ++i) {
            if (!loops[i].closed) continue;
            std::size_t b = 1;
            for (std::size_t k2 = 0; k2 < k; ++k2)
                for (std::size_t i2 = 0; i2 < e.levels[k2].loops.size(); ++i2) {
                    const auto& inner = e.levels[k2].loops[i2];
                    if (inner.closed && e.levels[k2].level < e.levels[k].level &&
                        loop_contains(loops[i], inner.points[0].first, inner.points[0].second))
                        b = std::max(b, best[k2][i2] + 1);
                }
            best[k][i] = b;
            top = std::max(top, b);
        }
    }
    return top;
}

/// A closed loop at level index k around (x, y) that leaves some other
/// closed loop of the same level outside it: a separate basin component.
inline std::optional<ContourLoop> separate_loop_around(const Equipotential& e, std::size_t k, double x, double y) {
    const auto& loops = e.levels.at(k).loops;
    for (const auto& a : loops) {
        if (!a.closed || !loop_contains(a, x, y)) continue;
        for (const auto& b : loops)
            if (&b != &a && b.closed && !loop_contains(a, b.points[0].first, b.points[0].second)) return a;
    }
    return std::nullopt;
}

namespace detail {

inline std::string svg_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return std::string(buf) == "-0.00" ? "0.00" : buf;
}

}  // namespace detail

/// One path per contour; y increases upward in the plane.
inline std::string equipotential_svg(const Equipotential& e, const std::string& title = "") {
    static const char* palette[] = {"#1f4e79", "#2e75b6", "#548235", "#c55a11", "#7030a0", "#bf9000", "#a50021"};
    const auto& w = e.window;
    const double px = 800.0 / (w.x1 - w.x0);
    const double width = 800, height = px * (w.y1 - w.y0);
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::svg_num(width) + "\" height=\"" +
                    detail::svg_num(height) + "\" viewBox=\"0 0 " + detail::svg_num(width) + " " +
                    detail::svg_num(height) + "\">\n";
    if (!title.empty()) {
        std::string t;
        for (char c : title) t += c == '<' ? "&lt;" : c == '>' ? "&gt;" : c == '&' ? "&amp;" : std::string(1, c);
        s += "<title>" + t + "</title>\n";
    }
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t k = 0; k < e.levels.size(); ++k) {
        const auto& lv = e.levels[k];
        s += "<g fill=\"none\" stroke=\"" + std::string(palette[k % 7]) + "\" stroke-width=\"1\" data-level=\"" +
             detail::svg_num(lv.level) + "\">\n";
        for (const auto& loop : lv.loops) {
            s += "<path d=\"";
            for (std::size_t i = 0; i < loop.points.size(); ++i) {
                s += i ? " L" : "M";
                s += detail::svg_num((loop.points[i].first - w.x0) * px) + " " +
                     detail::svg_num((w.y1 - loop.points[i].second) * px);
            }
            s += loop.closed ? " Z\"/>\n" : "\"/>\n";
        }
        s += "</g>\n";
    }
    return s + "</svg>\n";
}

}  // namespace splitrad
