#pragma once

#include <orbk/chart.hpp>
#include <orbk/gkm.hpp>
#include <orbk/toric.hpp>
#include <orbk/types.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

// Static SVG figures. Coordinates are printed with two decimals so output
// is byte-stable for a given input.

namespace orbk::svg {

struct Point {
    double x = 0;
    double y = 0;
};

inline std::string num(double v) {
    if (std::fabs(v) < 0.005) v = 0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

class Writer {
public:
    Writer(double width, double height) : w_(width), h_(height) {}

    void comment(const std::string& c) {
        std::string safe = c;
        for (std::size_t p; (p = safe.find("--")) != std::string::npos;) safe.replace(p, 2, "- -");
        body_ += "<!-- " + safe + " -->\n";
    }
    void line(Point a, Point b, const std::string& style) {
        body_ += "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) +
                 "\" " + style + "/>\n";
    }
    void circle(Point c, double r, const std::string& style) {
        body_ += "<circle cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" + num(r) + "\" " + style + "/>\n";
    }
    void rect(Point a, double w, double h, const std::string& style) {
        body_ += "<rect x=\"" + num(a.x) + "\" y=\"" + num(a.y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
                 "\" " + style + "/>\n";
    }
    void text(Point p, const std::string& t, const std::string& style = "font-size=\"11\"") {
        body_ += "<text x=\"" + num(p.x) + "\" y=\"" + num(p.y) + "\" " + style + ">" + escape(t) + "</text>\n";
    }

    std::string str(const std::string& title) const {
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
               num(w_) + "\" height=\"" + num(h_) + "\" viewBox=\"0 0 " + num(w_) + " " + num(h_) +
               "\" font-family=\"sans-serif\">\n<title>" + escape(title) + "</title>\n" +
               "<rect x=\"0\" y=\"0\" width=\"" + num(w_) + "\" height=\"" + num(h_) + "\" fill=\"white\"/>\n" + body_ +
               "</svg>\n";
    }

private:
    double w_, h_;
    std::string body_;
};

// Affine map from a data box onto a square panel, y pointing up.
class Frame {
public:
    Frame(std::vector<Point> pts, Point origin, double size) : origin_(origin), size_(size) {
        if (pts.empty()) pts.push_back({0, 0});
        lo_ = hi_ = pts.front();
        for (const auto& p : pts) {
            lo_.x = std::min(lo_.x, p.x);
            lo_.y = std::min(lo_.y, p.y);
            hi_.x = std::max(hi_.x, p.x);
            hi_.y = std::max(hi_.y, p.y);
        }
        span_ = std::max({hi_.x - lo_.x, hi_.y - lo_.y, 1.0});
        const double pad = 0.1 * span_;
        lo_.x -= pad + (span_ - (hi_.x - lo_.x)) / 2;
        lo_.y -= pad + (span_ - (hi_.y - lo_.y)) / 2;
        span_ += 2 * pad;
    }

    Point operator()(Point p) const {
        return {origin_.x + (p.x - lo_.x) / span_ * size_, origin_.y + size_ - (p.y - lo_.y) / span_ * size_};
    }

    Point lo() const { return lo_; }
    double span() const { return span_; }

private:
    Point origin_;
    double size_;
    Point lo_, hi_;
    double span_ = 1;
};

inline double to_double(const Rational& q) { return q.get_d(); }

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    return colors[i % 8];
}

namespace detail {

// Left panel: weight rays and the level in h* (k = 1 or 2).
inline void cone_panel(Writer& w, const ToricModel& m, Point origin, double size) {
    const std::size_t k = m.rank();
    std::vector<Point> dirs;
    for (std::size_t j = 0; j < m.num_coordinates(); ++j) {
        const IntVec a = m.column(j);
        dirs.push_back({a[0].get_d(), k == 2 ? a[1].get_d() : 0.0});
    }
    const Point eta{to_double(m.level()[0]), k == 2 ? to_double(m.level()[1]) : 0.0};
    double reach = std::max({std::fabs(eta.x), std::fabs(eta.y), 1.0});
    std::vector<Point> box{{-reach, -reach}, {reach, reach}};
    Frame f(box, origin, size);
    w.rect(origin, size, size, "fill=\"none\" stroke=\"#999\"");
    w.text({origin.x + 6, origin.y + 14}, k == 2 ? "weights and level in h*" : "weights and level on h* = R");
    w.line(f({-reach * 1.1, 0}), f({reach * 1.1, 0}), "stroke=\"#ccc\"");
    if (k == 2) w.line(f({0, -reach * 1.1}), f({0, reach * 1.1}), "stroke=\"#ccc\"");
    for (std::size_t j = 0; j < dirs.size(); ++j) {
        const double len = std::hypot(dirs[j].x, dirs[j].y);
        if (len == 0) continue;
        const Point tip{dirs[j].x / len * reach, dirs[j].y / len * reach};
        w.line(f({0, 0}), f(tip), std::string("stroke=\"") + palette(j) + "\" stroke-width=\"2\"");
        const Point lab = f({tip.x * 1.05, tip.y * 1.05});
        w.text({lab.x + 2, lab.y - 2 - 10.0 * static_cast<double>(j % 2)}, "a" + std::to_string(j + 1));
    }
    w.circle(f(eta), 4, "fill=\"black\"");
    const Point el = f(eta);
    w.text({el.x + 6, el.y + 12}, "eta");
}

}  // namespace detail

// Cone panel (k <= 2) plus a Morse diagram: one row per sector, critical
// components placed by critical value, dot area growing with |Gamma|.
template <class Report>
std::string toric_figure(const ToricModel& m, const Report& rep, const std::string& title) {
    const double panel = 360, gap = 30;
    const bool cone = m.rank() <= 2;
    const double width = (cone ? panel + gap : 0) + panel + 2 * gap;
    Writer w(width, panel + 2 * gap);
    w.comment("orbk toric figure: rank " + std::to_string(m.rank()) + ", " + std::to_string(m.num_coordinates()) +
              " coordinates");
    const Point right{gap + (cone ? panel + gap : 0), gap};
    if (cone) detail::cone_panel(w, m, {gap, gap}, panel);

    w.rect(right, panel, panel, "fill=\"none\" stroke=\"#999\"");
    w.text({right.x + 6, right.y + 14}, "critical components by sector");
    std::vector<double> values;
    for (const auto& s : rep.sectors)
        for (const auto& c : s.components) values.push_back(to_double(c.critical_value));
    double lo = values.empty() ? 0 : *std::min_element(values.begin(), values.end());
    double hi = values.empty() ? 1 : *std::max_element(values.begin(), values.end());
    if (hi - lo < 1e-9) {
        lo -= 1;
        hi += 1;
    }
    const double x0 = right.x + 90, x1 = right.x + panel - 20;
    const std::size_t rows = std::max<std::size_t>(rep.sectors.size(), 1);
    const double row_h = (panel - 40) / static_cast<double>(rows);
    for (std::size_t i = 0; i < rep.sectors.size(); ++i) {
        const auto& s = rep.sectors[i];
        const double y = right.y + 30 + row_h * (static_cast<double>(i) + 0.5);
        w.line({x0, y}, {x1, y}, "stroke=\"#ddd\"");
        w.text({right.x + 6, y + 4}, "t=" + s.element.to_string(), "font-size=\"10\"");
        for (const auto& c : s.components) {
            const double x = x0 + (to_double(c.critical_value) - lo) / (hi - lo) * (x1 - x0);
            const double r = 3 + 2 * std::sqrt(c.group.order().get_d());
            w.circle({x, y}, std::min(r, row_h / 2), c.group.is_trivial() ? "fill=\"black\"" : "fill=\"#d62728\"");
        }
    }
    return w.str(title);
}

// Linear projection R^d -> R^2 used to draw graphs of dimension d.
inline std::pair<Point, std::string> project(const RatVec& mu) {
    const std::size_t d = mu.size();
    if (d == 1) return {{to_double(mu[0]), 0}, "x = mu1, y = 0"};
    if (d == 2) return {{to_double(mu[0]), to_double(mu[1])}, "x = mu1, y = mu2"};
    double x = to_double(mu[0]), y = to_double(mu[1]);
    for (std::size_t i = 2; i < d; ++i) {
        const double angle = 3.141592653589793 * (0.25 + 0.3 * static_cast<double>(i - 2));
        x += 0.5 * std::cos(angle) * to_double(mu[i]);
        y += 0.5 * std::sin(angle) * to_double(mu[i]);
    }
    return {{x, y}, "x = mu1 + sum_i 0.5 cos(pi(0.25 + 0.3(i-3))) mu_i, y = mu2 + sum_i 0.5 sin(...) mu_i for i >= 3"};
}

// Vertices at mu, edges, the level set <x, b> = eta (d = 2) and crossing dots.
inline std::string gkm_figure(const GkmGraph& g, const CircleSubgroup& c, const Rational& eta,
                              const std::vector<CrossingEdge>& crossings, const std::string& title) {
    const double size = 420, gap = 30;
    Writer w(size + 2 * gap, size + 2 * gap);
    std::vector<Point> pts;
    std::string declared = "identity";
    for (const auto& v : g.vertices) {
        auto [p, how] = project(v.mu);
        pts.push_back(p);
        declared = how;
    }
    w.comment("orbk gkm figure: projection " + declared);
    Frame f(pts, {gap, gap}, size);
    w.rect({gap, gap}, size, size, "fill=\"none\" stroke=\"#999\"");
    for (const auto& e : g.edges) w.line(f(pts[e.v]), f(pts[e.w]), "stroke=\"#aaa\" stroke-width=\"1.5\"");

    if (g.dimension == 2 && (c.b()[0] != 0 || c.b()[1] != 0)) {
        // Points on b1 x + b2 y = eta across the data box.
        const double b1 = c.b()[0].get_d(), b2 = c.b()[1].get_d(), e = to_double(eta);
        const Point lo = f.lo();
        const double s = f.span();
        Point a, b;
        if (std::fabs(b2) >= std::fabs(b1)) {
            a = {lo.x, (e - b1 * lo.x) / b2};
            b = {lo.x + s, (e - b1 * (lo.x + s)) / b2};
        } else {
            a = {(e - b2 * lo.y) / b1, lo.y};
            b = {(e - b2 * (lo.y + s)) / b1, lo.y + s};
        }
        w.line(f(a), f(b), "stroke=\"black\" stroke-width=\"2.5\"");
    }
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        w.circle(f(pts[i]), 3, "fill=\"#555\"");
        const Point p = f(pts[i]);
        w.text({p.x + 5, p.y - 5}, g.vertices[i].id + " : " + dot(c.b(), g.vertices[i].mu).get_str(), "font-size=\"10\"");
    }
    for (const auto& x : crossings) {
        const double t = to_double((eta - x.lower_value) / (x.upper_value - x.lower_value));
        const Point a = pts[x.lower], b = pts[x.upper];
        const Point q = f({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        w.circle(q, 5, "fill=\"black\"");
        w.text({q.x + 6, q.y + 12}, "Z/" + Integer(abs(x.m)).get_str(), "font-size=\"10\"");
    }
    return w.str(title);
}

}  // namespace orbk::svg
