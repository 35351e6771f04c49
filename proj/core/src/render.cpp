#include "orbitkit/render.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "orbitkit/error.hpp"

namespace orbitkit {

namespace {

std::string num(const Scalar& v) { return to_decimal(v, 12); }

std::string escape(const std::string& s) {
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

class Svg {
 public:
  Svg(const Scalar& width, const Scalar& height, const std::string& title) {
    head_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
          << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
          << "<title>" << escape(title) << "</title>\n"
          << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
          << "\" fill=\"white\"/>\n";
  }

  void line(const Scalar& x1, const Scalar& y1, const Scalar& x2, const Scalar& y2, const char* style) {
    add() << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
          << "\" " << style << "/>\n";
  }
  void circle(const Scalar& cx, const Scalar& cy, const Scalar& r, const char* style) {
    add() << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" " << style << "/>\n";
  }
  void rect(const Scalar& x, const Scalar& y, const Scalar& w, const Scalar& h, const char* style) {
    add() << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
          << "\" " << style << "/>\n";
  }
  void polygon(const std::vector<std::pair<Scalar, Scalar>>& pts, const char* style) {
    auto& o = add();
    o << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) o << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
    o << "\" " << style << "/>\n";
  }
  void path(const std::string& d, const char* style) { add() << "<path d=\"" << d << "\" " << style << "/>\n"; }
  void text(const Scalar& x, const Scalar& y, const std::string& s, const char* style) {
    add() << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" " << style << '>' << escape(s) << "</text>\n";
  }
  void raw(const std::string& s) { add() << s; }

  std::string str() const { return head_.str() + body_.str() + "</svg>\n"; }

 private:
  std::ostringstream& add() {
    if (++elements_ > kRenderElementLimit) {
      throw Error(Errc::too_large, "drawing exceeds " + std::to_string(kRenderElementLimit) + " elements");
    }
    return body_;
  }

  std::ostringstream head_;
  std::ostringstream body_;
  std::size_t elements_ = 0;
};

// Unit square [0,1]^2 drawn in a 480x480 canvas with a 40 px margin.
const Scalar kMargin(40);
const Scalar kPlot(400);
Scalar px(const Scalar& x) { return kMargin + kPlot * x; }
Scalar py(const Scalar& y) { return kMargin + kPlot * (1 - y); }

const char* kInk = "stroke=\"black\" stroke-width=\"2\" fill=\"none\"";
const char* kFill = "stroke=\"black\" stroke-width=\"1\" fill=\"#9ab\" fill-opacity=\"0.6\"";
const char* kDot = "fill=\"black\"";
const char* kHollow = "stroke=\"black\" stroke-width=\"1.5\" fill=\"white\"";
const char* kThin = "stroke=\"#888\" stroke-width=\"1\" fill=\"none\"";
const char* kLabel = "font-family=\"monospace\" font-size=\"12\"";

void unit_frame(Svg& svg, const std::string& title) {
  svg.rect(kMargin, kMargin, kPlot, kPlot, kThin);
  svg.line(px(0), py(0), px(1), py(1), "stroke=\"#ccc\" stroke-width=\"1\" stroke-dasharray=\"4 4\"");
  svg.text(kMargin, Scalar(24), title, kLabel);
  svg.text(px(0) - 4, py(0) + 16, "0", kLabel);
  svg.text(px(1) - 4, py(0) + 16, "1", kLabel);
  svg.text(px(0) - 16, py(1) + 4, "1", kLabel);
}

void open_end(Svg& svg, bool closed, const Scalar& x, const Scalar& y) {
  if (!closed) svg.circle(px(x), py(y), Scalar(4), kHollow);
}

}  // namespace

std::string render_svg(const SetValuedMap& f) {
  Svg svg(Scalar(480), Scalar(480), "Gr(" + f.name() + ")");
  unit_frame(svg, "Gr(" + f.name() + ")");
  for (const auto& piece : f.pieces()) {
    if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
      const Span& d = s->domain;
      svg.line(px(d.lo), py(s->f(d.lo)), px(d.hi), py(s->f(d.hi)), kInk);
      open_end(svg, d.lo_closed, d.lo, s->f(d.lo));
      open_end(svg, d.hi_closed, d.hi, s->f(d.hi));
    } else if (const auto* b = std::get_if<BandPiece>(&piece)) {
      const Span& d = b->domain;
      svg.polygon({{px(d.lo), py(b->lower(d.lo))},
                   {px(d.hi), py(b->lower(d.hi))},
                   {px(d.hi), py(b->upper(d.hi))},
                   {px(d.lo), py(b->upper(d.lo))}},
                  kFill);
    } else if (const auto* r = std::get_if<RectanglePiece>(&piece)) {
      const Span& d = r->domain;
      for (const auto& c : r->value.components()) {
        if (c.is_point()) {
          svg.line(px(d.lo), py(c.lo), px(d.hi), py(c.lo), kInk);
          open_end(svg, d.lo_closed, d.lo, c.lo);
          open_end(svg, d.hi_closed, d.hi, c.lo);
        } else {
          svg.rect(px(d.lo), py(c.hi), kPlot * (d.hi - d.lo), kPlot * (c.hi - c.lo), kFill);
        }
      }
    } else if (const auto* p = std::get_if<PointPiece>(&piece)) {
      for (const auto& c : p->value.components()) {
        if (c.is_point()) {
          svg.circle(px(p->at), py(c.lo), Scalar(4), kDot);
        } else {
          svg.line(px(p->at), py(c.lo), px(p->at), py(c.hi), kInk);
        }
      }
    }
  }
  return svg.str();
}

std::string render_svg(const OrbitTree& t, const std::string& title) {
  // Leaves take consecutive slots; an inner node sits midway between its
  // first and last child.
  const std::size_t n = t.nodes.size();
  std::vector<Scalar> slot(n);
  std::vector<std::size_t> order;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    std::size_t id = stack.back();
    stack.pop_back();
    order.push_back(id);
    for (auto it = t.children[id].rbegin(); it != t.children[id].rend(); ++it) stack.push_back(*it);
  }
  Scalar leaf(0);
  for (std::size_t id : order) {
    if (t.children[id].empty()) {
      slot[id] = leaf;
      leaf += 1;
    }
  }
  for (std::size_t k = t.levels.size(); k-- > 0;) {
    for (std::size_t id : t.levels[k]) {
      const auto& kids = t.children[id];
      if (!kids.empty()) slot[id] = (slot[kids.front()] + slot[kids.back()]) / 2;
    }
  }

  const Scalar col(24);
  const Scalar row(60);
  const Scalar width = kMargin * 2 + col * max_of(leaf - 1, Scalar(0)) + 80;
  const Scalar height = kMargin * 2 + row * (t.depth > 0 ? t.depth - 1 : 0) + 20;
  Svg svg(width, height, title);
  svg.text(kMargin, Scalar(24), title, kLabel);
  auto x_of = [&](std::size_t id) -> Scalar { return kMargin + 40 + col * slot[id]; };
  auto y_of = [&](std::size_t level) -> Scalar { return kMargin + 20 + row * static_cast<unsigned long>(level); };
  std::vector<std::size_t> level_of(n, 0);
  for (std::size_t k = 0; k < t.levels.size(); ++k) {
    for (std::size_t id : t.levels[k]) level_of[id] = k;
  }
  for (std::size_t id = 0; id < n; ++id) {
    if (t.nodes[id].parent >= 0) {
      const auto par = static_cast<std::size_t>(t.nodes[id].parent);
      svg.line(x_of(par), y_of(level_of[par]), x_of(id), y_of(level_of[id]), kThin);
    }
  }
  const bool labels = n <= 64;
  for (std::size_t id = 0; id < n; ++id) {
    svg.circle(x_of(id), y_of(level_of[id]), Scalar(4), kDot);
    if (labels) svg.text(x_of(id) + 6, y_of(level_of[id]) - 6, to_string(t.nodes[id].value), kLabel);
  }
  return svg.str();
}

std::string render_svg(const OrbitCover& c, const std::string& title) {
  // Column k shows the cells at orbit index k; lines join consecutive cells
  // of some path.
  const Scalar col(80);
  const Scalar width = kMargin * 2 + col * c.depth;
  const Scalar height = kMargin * 2 + kPlot;
  Svg svg(width, height, title);
  svg.text(kMargin, Scalar(24), title, kLabel);
  const Scalar cell_h = kPlot / c.m;
  auto cx = [&](unsigned k) -> Scalar { return kMargin + col * (k - 1) + col / 2; };
  auto cy = [&](unsigned cell) -> Scalar { return py(Scalar(cell) / c.m + Scalar(1, 2) / c.m); };
  std::set<std::tuple<unsigned, unsigned, unsigned>> steps;
  for (const auto& p : c.paths) {
    for (unsigned k = 0; k + 1 < p.size(); ++k) steps.emplace(k + 1, p[k], p[k + 1]);
  }
  for (const auto& [k, a, b] : steps) svg.line(cx(k), cy(a), cx(k + 1), cy(b), kThin);
  for (unsigned k = 1; k <= c.depth; ++k) {
    for (unsigned cell : project_k(c, k)) {
      svg.rect(cx(k) - 10, py(Scalar(cell + 1) / c.m), Scalar(20), cell_h, kFill);
    }
    svg.text(cx(k) - 4, height - 16, std::to_string(k), kLabel);
  }
  return svg.str();
}

std::string render_svg(const TransitionGraph& g, const std::string& title) {
  // Nodes on a horizontal line; forward edges arc above, backward edges
  // below, self-loops as small circles.
  const Scalar gap(60);
  const Scalar width = kMargin * 2 + gap * g.m;
  const Scalar base(240);
  Svg svg(width, Scalar(480), title);
  svg.text(kMargin, Scalar(24), title, kLabel);
  svg.raw(
      "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
      "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n");
  auto x_of = [&](unsigned i) -> Scalar { return kMargin + gap * i + gap / 2; };
  for (unsigned a = 0; a < g.m; ++a) {
    for (unsigned b : g.succ[a]) {
      if (a == b) {
        svg.circle(x_of(a), base - 22, Scalar(10), kThin);
        continue;
      }
      const Scalar span = x_of(b) - x_of(a);
      const Scalar lift = (b > a ? -1 : 1) * (abs_diff(x_of(a), x_of(b)) / 3 + 10);
      std::ostringstream d;
      d << 'M' << num(x_of(a)) << ',' << num(base) << " Q" << num(x_of(a) + span / 2) << ',' << num(base + lift) << ' '
        << num(x_of(b)) << ',' << num(base);
      svg.path(d.str(), "stroke=\"#555\" stroke-width=\"1\" fill=\"none\" marker-end=\"url(#arrow)\"");
    }
  }
  for (unsigned i = 0; i < g.m; ++i) {
    svg.circle(x_of(i), base, Scalar(12), kHollow);
    svg.text(x_of(i) - 4, base + 4, std::to_string(i), kLabel);
    const Interval cell = grid_cell(g.m, i);
    svg.text(x_of(i) - 24, base + 200, "[" + to_string(cell.lo) + "," + to_string(cell.hi) + "]",
             "font-family=\"monospace\" font-size=\"9\"");
  }
  return svg.str();
}

}  // namespace orbitkit
