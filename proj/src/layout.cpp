#include "circlekit/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace circlekit {

namespace {

std::array<int, 3> corner_key(int a, int b, int c) {
    std::array<int, 3> k = {a, b, c};
    std::sort(k.begin(), k.end());
    return k;
}

}  // namespace

PatternLayout layout(const PatternProblem& p, const std::vector<double>& rho,
                     const std::vector<int>& exclude, const LayoutSeed& seed) {
    const int n = p.node_count();
    if (static_cast<int>(rho.size()) != n) throw std::invalid_argument("layout: rho size mismatch");
    if (p.rotations.size() != static_cast<size_t>(n))
        throw std::invalid_argument("layout: rotations required for every node");

    PatternLayout l;
    l.centers.assign(n, {});
    l.radii.resize(n);
    l.placed.assign(n, 0);
    for (int j = 0; j < n; ++j) l.radii[j] = std::exp(rho[j]);

    std::vector<char> excluded(n, 0);
    for (int e : exclude) excluded[e] = 1;

    // Reference direction towards one already-placed neighbor, set at placement.
    std::vector<int> ref_nbr(n, -1);
    std::vector<double> ref_angle(n, 0.0);

    // Effective rotations: excluded circles are dropped; an interior rotation
    // that loses an entry becomes an open chain cut at the removed slot (the
    // excluded circle surrounds the pattern there, so the gap across it does
    // not follow the tangent-chain rule).
    std::vector<std::vector<int>> rot(n);
    std::vector<char> wraps(n, 0);
    for (int j = 0; j < n; ++j) {
        const auto& full = p.rotations[j];
        const int deg = static_cast<int>(full.size());
        int cut = -1;
        for (int m = 0; m < deg; ++m)
            if (excluded[full[m]]) cut = m;
        wraps[j] = p.nodes[j].role == NodeRole::interior && cut < 0;
        const int start = cut < 0 ? 0 : cut + 1;
        for (int m = 0; m < deg; ++m) {
            const int k = full[(start + m) % deg];
            if (!excluded[k]) rot[j].push_back(k);
        }
    }

    int s0 = seed.node;
    if (s0 < 0)
        for (int j = 0; j < n && s0 < 0; ++j)
            if (!excluded[j] && !rot[j].empty()) s0 = j;
    if (s0 < 0) throw std::invalid_argument("layout: nothing to place");
    int s1 = seed.neighbor >= 0 ? seed.neighbor : rot[s0].front();

    l.centers[s0] = {0, 0};
    l.placed[s0] = 1;
    ref_nbr[s0] = s1;
    ref_angle[s0] = seed.angle;

    auto note_position = [&](int node, const Point2& pos, double host_radius) {
        if (excluded[node]) return;
        if (!l.placed[node]) {
            l.centers[node] = pos;
            l.placed[node] = 1;
            return;
        }
        const double d = (l.centers[node] - pos).norm();
        l.max_position_defect = std::max(l.max_position_defect, d / std::max(host_radius, 1e-300));
    };

    const double dist01 = std::hypot(l.radii[s0], l.radii[s1]);
    note_position(s1, Point2{std::cos(seed.angle), std::sin(seed.angle)} * dist01, l.radii[s0]);
    if (!excluded[s1]) {
        ref_nbr[s1] = s0;
        ref_angle[s1] = seed.angle + std::numbers::pi;
    }

    std::queue<int> work;
    work.push(s0);
    if (!excluded[s1]) work.push(s1);
    std::vector<char> processed(n, 0);

    while (!work.empty()) {
        const int j = work.front();
        work.pop();
        if (processed[j]) continue;
        processed[j] = 1;
        const auto& rj = rot[j];
        if (rj.empty()) continue;
        const int deg = static_cast<int>(rj.size());

        int mref = -1;
        for (int m = 0; m < deg; ++m)
            if (rj[m] == ref_nbr[j]) mref = m;
        if (mref < 0) throw std::runtime_error("layout: reference neighbor missing from rotation");

        std::vector<double> half(deg), theta(deg);
        for (int m = 0; m < deg; ++m) half[m] = std::atan(l.radii[rj[m]] / l.radii[j]);
        theta[mref] = ref_angle[j];
        for (int m = mref + 1; m < deg; ++m) theta[m] = theta[m - 1] + half[m - 1] + half[m];
        for (int m = mref - 1; m >= 0; --m) theta[m] = theta[m + 1] - half[m + 1] - half[m];

        for (int m = 0; m < deg; ++m) {
            const int k = rj[m];
            const double d = std::hypot(l.radii[j], l.radii[k]);
            const Point2 pos = l.centers[j] + Point2{std::cos(theta[m]), std::sin(theta[m])} * d;
            const bool was_placed = l.placed[k] != 0;
            note_position(k, pos, l.radii[j]);
            if (!excluded[k] && !was_placed) {
                ref_nbr[k] = j;
                ref_angle[k] = theta[m] + std::numbers::pi;
                work.push(k);
            }
        }
        // Tangency corners between consecutive neighbors (wrapping only when the
        // rotation is a full interior cycle).
        const int last = wraps[j] ? deg : deg - 1;
        for (int m = 0; m < last; ++m) {
            const int a = rj[m], b = rj[(m + 1) % deg];
            const double ang = theta[m] + half[m];
            const Point2 pos = l.centers[j] + Point2{std::cos(ang), std::sin(ang)} * l.radii[j];
            const auto key = corner_key(j, a, b);
            auto it = l.corners.find(key);
            if (it == l.corners.end())
                l.corners[key] = pos;
            else
                l.max_corner_defect =
                    std::max(l.max_corner_defect, (it->second - pos).norm() / l.radii[j]);
        }
    }

    // Residual passes.
    for (int ai = 0; ai < p.adjacency_count(); ++ai) {
        const auto [j, k] = p.adjacencies()[ai];
        l.intersections.push_back({Point2{}, Point2{}});
        if (excluded[j] || excluded[k] || !l.placed[j] || !l.placed[k]) continue;
        const double rj = l.radii[j], rk = l.radii[k];
        const Point2 u = l.centers[k] - l.centers[j];
        const double d = u.norm();
        const double target = rj * rj + rk * rk;
        l.max_orthogonality_defect =
            std::max(l.max_orthogonality_defect, std::abs(d * d - target) / target);
        const Point2 ud = u * (1.0 / d);
        const Point2 perp{-ud.y, ud.x};
        const double a = rj * rj / d, h = rj * rk / d;
        l.intersections[ai][0] = l.centers[j] + ud * a + perp * h;
        l.intersections[ai][1] = l.centers[j] + ud * a - perp * h;
    }
    if (l.max_position_defect > 1e-3)
        throw std::runtime_error(
            "layout: radii do not close up (max positional defect " +
            std::to_string(l.max_position_defect) + " of the local radius); solve the pattern first");
    for (const auto& [key, pos] : l.corners) {
        (void)pos;
        // Consecutive neighbors around the host circle must touch.
        for (int i = 0; i < 3; ++i)
            for (int i2 = i + 1; i2 < 3; ++i2) {
                const int a = key[i], b = key[i2];
                bool adjacent = false;
                for (int nb : p.neighbors()[a])
                    if (nb == b) adjacent = true;
                if (adjacent || excluded[a] || excluded[b] || !l.placed[a] || !l.placed[b]) continue;
                const double gap =
                    std::abs((l.centers[a] - l.centers[b]).norm() - l.radii[a] - l.radii[b]);
                l.max_tangency_defect =
                    std::max(l.max_tangency_defect, gap / (l.radii[a] + l.radii[b]));
            }
    }
    return l;
}

std::string layout_svg(const PatternLayout& l) {
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    for (size_t j = 0; j < l.centers.size(); ++j) {
        if (!l.placed[j]) continue;
        lo_x = std::min(lo_x, l.centers[j].x - l.radii[j]);
        hi_x = std::max(hi_x, l.centers[j].x + l.radii[j]);
        lo_y = std::min(lo_y, l.centers[j].y - l.radii[j]);
        hi_y = std::max(hi_y, l.centers[j].y + l.radii[j]);
    }
    if (lo_x > hi_x) lo_x = lo_y = 0, hi_x = hi_y = 1;
    const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
    std::ostringstream os;
    os.precision(12);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << lo_x - pad << " " << lo_y - pad << " "
       << (hi_x - lo_x + 2 * pad) << " " << (hi_y - lo_y + 2 * pad) << "\">\n";
    const double stroke = 0.004 * std::max(hi_x - lo_x, hi_y - lo_y);
    for (size_t j = 0; j < l.centers.size(); ++j) {
        if (!l.placed[j]) continue;
        os << "  <circle cx=\"" << l.centers[j].x << "\" cy=\"" << l.centers[j].y << "\" r=\"" << l.radii[j]
           << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\"/>\n";
    }
    for (const auto& [key, pos] : l.corners) {
        (void)key;
        os << "  <circle cx=\"" << pos.x << "\" cy=\"" << pos.y << "\" r=\"" << 1.5 * stroke
           << "\" fill=\"black\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string write_layout_text(const PatternLayout& l) {
    std::ostringstream os;
    os.precision(17);
    os << "circlekit layout 1\n";
    os << "circles " << l.centers.size() << "\n";
    for (size_t j = 0; j < l.centers.size(); ++j)
        os << "c " << j << " " << (l.placed[j] ? 1 : 0) << " " << l.centers[j].x << " " << l.centers[j].y
           << " " << l.radii[j] << "\n";
    os << "orthogonality_defect " << l.max_orthogonality_defect << "\n";
    os << "tangency_defect " << l.max_tangency_defect << "\n";
    os << "position_defect " << l.max_position_defect << "\n";
    os << "end\n";
    return os.str();
}

}  // namespace circlekit
