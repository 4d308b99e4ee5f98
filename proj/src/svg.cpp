#include "stylo/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace stylo::svg {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 560.0;
constexpr double kMarginLeft = 180.0;
constexpr double kMarginRight = 40.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};
constexpr int kPaletteSize = 12;

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Doc {
  std::string body;

  explicit Doc(const std::string& title, double w = kWidth, double h = kHeight) {
    body = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    body += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
            format_number(w) + "\" height=\"" + format_number(h) + "\" viewBox=\"0 0 " +
            format_number(w) + " " + format_number(h) + "\">\n";
    body += "<rect x=\"0\" y=\"0\" width=\"" + format_number(w) + "\" height=\"" +
            format_number(h) + "\" fill=\"white\"/>\n";
    text(w / 2, 24, title, 16, "middle");
  }

  void raw(const std::string& s) { body += s; }

  void attr(std::string& el, const std::string& name, const std::string& value) {
    el += " " + name + "=\"" + value + "\"";
  }

  void text(double x, double y, const std::string& s, int size = 11,
            const std::string& anchor = "start", const std::string& extra = "") {
    body += "<text x=\"" + format_number(x) + "\" y=\"" + format_number(y) +
            "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(size) +
            "\" text-anchor=\"" + anchor + "\"" + extra + ">" + escape_xml(s) + "</text>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke = "#333",
            double width = 1.0) {
    body += "<line x1=\"" + format_number(x1) + "\" y1=\"" + format_number(y1) + "\" x2=\"" +
            format_number(x2) + "\" y2=\"" + format_number(y2) + "\" stroke=\"" + stroke +
            "\" stroke-width=\"" + format_number(width) + "\"/>\n";
  }

  std::string finish() {
    body += "</svg>\n";
    return std::move(body);
  }
};

const char* color_for(std::size_t i) { return kPalette[i % kPaletteSize]; }

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string bar_chart(const std::vector<BarDatum>& bars, const std::string& title) {
  if (bars.empty()) throw std::invalid_argument("bar_chart: no data");
  Doc doc{title};
  double vmax = 0.0;
  for (const auto& b : bars) vmax = std::max(vmax, b.value + b.error);
  if (vmax <= 0.0) vmax = 1.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const double band = plot_h / static_cast<double>(bars.size());

  doc.line(kMarginLeft, kMarginTop, kMarginLeft, kMarginTop + plot_h);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const auto& b = bars[i];
    const double y = kMarginTop + band * static_cast<double>(i) + band * 0.15;
    const double h = band * 0.7;
    const double w = plot_w * b.value / vmax;
    doc.raw("<rect class=\"bar\" data-label=\"" + escape_xml(b.label) + "\" data-value=\"" +
            format_number(b.value) + "\" x=\"" + format_number(kMarginLeft) + "\" y=\"" +
            format_number(y) + "\" width=\"" + format_number(std::max(w, 0.0)) + "\" height=\"" +
            format_number(h) + "\" fill=\"" + color_for(0) + "\"/>\n");
    if (b.error > 0.0) {
      const double xe = kMarginLeft + plot_w * (b.value + b.error) / vmax;
      const double xs = kMarginLeft + plot_w * std::max(b.value - b.error, 0.0) / vmax;
      doc.line(xs, y + h / 2, xe, y + h / 2, "#222");
    }
    doc.text(kMarginLeft - 6, y + h / 2 + 4, b.label, 11, "end");
    doc.text(kMarginLeft + std::max(w, 0.0) + 4, y + h / 2 + 4, format_number(b.value), 10);
  }
  return doc.finish();
}

std::string dot_plot_log(const std::vector<BarDatum>& dots, const std::string& title) {
  if (dots.empty()) throw std::invalid_argument("dot_plot_log: no data");
  for (const auto& d : dots)
    if (d.value <= 0.0) throw std::invalid_argument("dot_plot_log: non-positive value");

  double lmin = 0.0, lmax = 0.0;
  for (const auto& d : dots) {
    const double lo = std::log10(std::max(d.value - d.error, d.value * 0.5));
    const double hi = std::log10(d.value + d.error);
    lmin = std::min(lmin, lo);
    lmax = std::max(lmax, hi);
  }
  lmin = std::floor(lmin - 0.1);
  lmax = std::ceil(lmax + 0.1);

  Doc doc{title};
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const double band = plot_h / static_cast<double>(dots.size());
  auto xpos = [&](double v) {
    return kMarginLeft + plot_w * (std::log10(v) - lmin) / (lmax - lmin);
  };

  // ratio = 1 reference line
  doc.line(xpos(1.0), kMarginTop, xpos(1.0), kMarginTop + plot_h, "#999");
  for (double e = lmin; e <= lmax + 1e-9; e += 1.0) {
    const double x = kMarginLeft + plot_w * (e - lmin) / (lmax - lmin);
    doc.text(x, kMarginTop + plot_h + 16, "1e" + format_number(e), 10, "middle");
  }

  for (std::size_t i = 0; i < dots.size(); ++i) {
    const auto& d = dots[i];
    const double y = kMarginTop + band * (static_cast<double>(i) + 0.5);
    if (d.error > 0.0)
      doc.line(xpos(std::max(d.value - d.error, 1e-12)), y, xpos(d.value + d.error), y, "#555");
    doc.raw("<circle class=\"dot\" data-label=\"" + escape_xml(d.label) + "\" data-value=\"" +
            format_number(d.value) + "\" data-stderr=\"" + format_number(d.error) + "\" cx=\"" +
            format_number(xpos(d.value)) + "\" cy=\"" + format_number(y) +
            "\" r=\"4\" fill=\"" + color_for(0) + "\"/>\n");
    doc.text(kMarginLeft - 6, y + 4, d.label, 11, "end");
  }
  return doc.finish();
}

std::string heatmap(const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels, const Eigen::MatrixXd& values,
                    const std::string& title) {
  if (values.rows() != static_cast<Eigen::Index>(row_labels.size()) ||
      values.cols() != static_cast<Eigen::Index>(col_labels.size()))
    throw std::invalid_argument("heatmap: label/matrix shape mismatch");

  const double vmax = std::max(values.cwiseAbs().maxCoeff(), 1e-12);
  Doc doc{title};
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const double cw = plot_w / static_cast<double>(col_labels.size());
  const double ch = plot_h / static_cast<double>(row_labels.size());

  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const double v = values(r, c);
      // diverging blue-white-red
      const double t = std::clamp(v / vmax, -1.0, 1.0);
      const int red = t >= 0 ? 255 : static_cast<int>(std::lround(255.0 * (1.0 + t)));
      const int blue = t <= 0 ? 255 : static_cast<int>(std::lround(255.0 * (1.0 - t)));
      const int green = static_cast<int>(std::lround(255.0 * (1.0 - std::abs(t))));
      doc.raw("<rect class=\"cell\" data-row=\"" + escape_xml(row_labels[static_cast<std::size_t>(r)]) +
              "\" data-col=\"" + escape_xml(col_labels[static_cast<std::size_t>(c)]) +
              "\" data-value=\"" + format_number(v) + "\" x=\"" +
              format_number(kMarginLeft + cw * static_cast<double>(c)) + "\" y=\"" +
              format_number(kMarginTop + ch * static_cast<double>(r)) + "\" width=\"" +
              format_number(cw) + "\" height=\"" + format_number(ch) + "\" fill=\"rgb(" +
              std::to_string(red) + "," + std::to_string(green) + "," + std::to_string(blue) +
              ")\"/>\n");
    }
    doc.text(kMarginLeft - 6, kMarginTop + ch * (static_cast<double>(r) + 0.5) + 4,
             row_labels[static_cast<std::size_t>(r)], 10, "end");
  }
  for (std::size_t c = 0; c < col_labels.size(); ++c) {
    const double x = kMarginLeft + cw * (static_cast<double>(c) + 0.5);
    doc.text(x, kMarginTop + plot_h + 14, col_labels[c], 8, "end",
             " transform=\"rotate(-60 " + format_number(x) + " " +
                 format_number(kMarginTop + plot_h + 14) + ")\"");
  }
  return doc.finish();
}

std::string scatter_plot(const std::vector<ScatterPoint>& points,
                         const std::vector<ScatterEllipse>& ellipses, const std::string& title) {
  if (points.empty()) throw std::invalid_argument("scatter_plot: no data");
  double xmin = points[0].x, xmax = points[0].x, ymin = points[0].y, ymax = points[0].y;
  for (const auto& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  for (const auto& e : ellipses) {
    const double r = std::max(e.params.semi_major, e.params.semi_minor);
    xmin = std::min(xmin, e.params.center.x() - r);
    xmax = std::max(xmax, e.params.center.x() + r);
    ymin = std::min(ymin, e.params.center.y() - r);
    ymax = std::max(ymax, e.params.center.y() + r);
  }
  const double dx = std::max(xmax - xmin, 1e-9);
  const double dy = std::max(ymax - ymin, 1e-9);

  Doc doc{title};
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto X = [&](double x) { return kMarginLeft + plot_w * (x - xmin) / dx; };
  auto Y = [&](double y) { return kMarginTop + plot_h * (ymax - y) / dy; };
  const double sx = plot_w / dx;
  const double sy = plot_h / dy;

  // color/marker legend keys in first-appearance order
  std::vector<std::string> colors, markers;
  auto key_index = [](std::vector<std::string>& keys, const std::string& k) {
    const auto it = std::find(keys.begin(), keys.end(), k);
    if (it != keys.end()) return static_cast<std::size_t>(it - keys.begin());
    keys.push_back(k);
    return keys.size() - 1;
  };

  for (const auto& e : ellipses) {
    const double angle =
        std::atan2(e.params.axis_major.y(), e.params.axis_major.x()) * 180.0 / M_PI;
    doc.raw("<ellipse class=\"ellipse\" data-label=\"" + escape_xml(e.label) +
            "\" data-center-x=\"" + format_number(e.params.center.x()) + "\" data-center-y=\"" +
            format_number(e.params.center.y()) + "\" data-semi-major=\"" +
            format_number(e.params.semi_major) + "\" data-semi-minor=\"" +
            format_number(e.params.semi_minor) + "\" cx=\"" + format_number(X(e.params.center.x())) +
            "\" cy=\"" + format_number(Y(e.params.center.y())) + "\" rx=\"" +
            format_number(e.params.semi_major * sx) + "\" ry=\"" +
            format_number(e.params.semi_minor * sy) + "\" transform=\"rotate(" +
            format_number(-angle) + " " + format_number(X(e.params.center.x())) + " " +
            format_number(Y(e.params.center.y())) + ")\" fill=\"none\" stroke=\"#888\"/>\n");
    doc.text(X(e.params.center.x()), Y(e.params.center.y()) - 4, e.label, 10, "middle");
  }

  for (const auto& p : points) {
    const std::size_t ci = key_index(colors, p.color_key);
    const std::size_t mi = key_index(markers, p.marker_key);
    const std::string common = " class=\"point\" data-label=\"" + escape_xml(p.label) +
                               "\" data-x=\"" + format_number(p.x) + "\" data-y=\"" +
                               format_number(p.y) + "\" data-color-key=\"" +
                               escape_xml(p.color_key) + "\" data-marker-key=\"" +
                               escape_xml(p.marker_key) + "\" fill=\"" + color_for(ci) + "\"";
    const double x = X(p.x), y = Y(p.y);
    switch (mi % 4) {
      case 0:
        doc.raw("<circle" + common + " cx=\"" + format_number(x) + "\" cy=\"" + format_number(y) +
                "\" r=\"5\"/>\n");
        break;
      case 1:
        doc.raw("<rect" + common + " x=\"" + format_number(x - 4) + "\" y=\"" +
                format_number(y - 4) + "\" width=\"8\" height=\"8\"/>\n");
        break;
      case 2:
        doc.raw("<polygon" + common + " points=\"" + format_number(x) + "," +
                format_number(y - 5) + " " + format_number(x - 5) + "," + format_number(y + 4) +
                " " + format_number(x + 5) + "," + format_number(y + 4) + "\"/>\n");
        break;
      default:
        doc.raw("<polygon" + common + " points=\"" + format_number(x) + "," +
                format_number(y - 5) + " " + format_number(x + 5) + "," + format_number(y) + " " +
                format_number(x) + "," + format_number(y + 5) + " " + format_number(x - 5) + "," +
                format_number(y) + "\"/>\n");
        break;
    }
  }
  return doc.finish();
}

std::string dendrogram_chart(const stats::Dendrogram& tree, const std::string& title) {
  const int n = static_cast<int>(tree.leaves.size());
  if (n < 2 || tree.merges.size() != static_cast<std::size_t>(n - 1))
    throw std::invalid_argument("dendrogram_chart: malformed dendrogram");

  // Leaf order: depth-first from the final merge so branches never cross.
  std::vector<int> order;
  {
    std::vector<const stats::Merge*> by_id(static_cast<std::size_t>(2 * n - 1), nullptr);
    for (std::size_t t = 0; t < tree.merges.size(); ++t)
      by_id[static_cast<std::size_t>(n) + t] = &tree.merges[t];
    std::vector<int> stack = {2 * n - 2};
    while (!stack.empty()) {
      const int id = stack.back();
      stack.pop_back();
      if (id < n) {
        order.push_back(id);
        continue;
      }
      const auto* m = by_id[static_cast<std::size_t>(id)];
      stack.push_back(m->b);
      stack.push_back(m->a);
    }
  }

  Doc doc{title};
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  double hmax = 0.0;
  for (const auto& m : tree.merges) hmax = std::max(hmax, m.height);
  if (hmax <= 0.0) hmax = 1.0;
  auto X = [&](double h) { return kMarginLeft + plot_w * (1.0 - h / hmax); };

  std::vector<double> ypos(static_cast<std::size_t>(2 * n - 1), 0.0);
  std::vector<double> xpos(static_cast<std::size_t>(2 * n - 1), X(0.0));
  const double band = plot_h / static_cast<double>(n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int leaf = order[i];
    ypos[static_cast<std::size_t>(leaf)] = kMarginTop + band * (static_cast<double>(i) + 0.5);
    doc.text(kMarginLeft + plot_w + 6, ypos[static_cast<std::size_t>(leaf)] + 4,
             tree.leaves[static_cast<std::size_t>(leaf)], 11);
  }
  for (std::size_t t = 0; t < tree.merges.size(); ++t) {
    const auto& m = tree.merges[t];
    const std::size_t id = static_cast<std::size_t>(n) + t;
    const double x = X(m.height);
    const double ya = ypos[static_cast<std::size_t>(m.a)];
    const double yb = ypos[static_cast<std::size_t>(m.b)];
    doc.raw("<path class=\"merge\" data-height=\"" + format_number(m.height) + "\" data-a=\"" +
            std::to_string(m.a) + "\" data-b=\"" + std::to_string(m.b) + "\" d=\"M " +
            format_number(xpos[static_cast<std::size_t>(m.a)]) + " " + format_number(ya) + " L " +
            format_number(x) + " " + format_number(ya) + " L " + format_number(x) + " " +
            format_number(yb) + " L " + format_number(xpos[static_cast<std::size_t>(m.b)]) + " " +
            format_number(yb) + "\" fill=\"none\" stroke=\"#333\"/>\n");
    ypos[id] = (ya + yb) / 2.0;
    xpos[id] = x;
  }
  return doc.finish();
}

std::string consensus_chart(const stats::ConsensusTree& tree, const std::string& title) {
  Doc doc{title};
  const double band = (kHeight - kMarginTop - kMarginBottom) /
                      std::max<double>(1.0, static_cast<double>(tree.clades.size() + 1));
  doc.text(kMarginLeft, kMarginTop, "threshold p = " + format_number(tree.threshold), 12);
  for (std::size_t i = 0; i < tree.clades.size(); ++i) {
    const auto& clade = tree.clades[i];
    std::string members;
    for (const auto& leaf : clade.leaves) members += (members.empty() ? "" : ", ") + leaf;
    const double y = kMarginTop + band * static_cast<double>(i + 1);
    doc.raw("<g class=\"clade\" data-support=\"" + format_number(clade.support) +
            "\" data-members=\"" + escape_xml(members) + "\">\n");
    doc.text(kMarginLeft, y, "{" + members + "}", 12);
    doc.text(kWidth - kMarginRight, y, format_number(clade.support), 12, "end");
    doc.raw("</g>\n");
  }
  return doc.finish();
}

std::string roc_chart(const std::vector<RocCurve>& curves, const std::string& title) {
  if (curves.empty()) throw std::invalid_argument("roc_chart: no curves");
  Doc doc{title};
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto X = [&](double v) { return kMarginLeft + plot_w * v; };
  auto Y = [&](double v) { return kMarginTop + plot_h * (1.0 - v); };
  doc.line(X(0), Y(0), X(1), Y(1), "#bbb");
  doc.line(X(0), Y(0), X(1), Y(0));
  doc.line(X(0), Y(0), X(0), Y(1));
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    std::string d;
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      d += (k == 0 ? "M " : " L ");
      d += format_number(X(c.points[k].first)) + " " + format_number(Y(c.points[k].second));
    }
    doc.raw("<path class=\"roc\" data-name=\"" + escape_xml(c.name) + "\" data-auc=\"" +
            format_number(c.auc) + "\" d=\"" + d + "\" fill=\"none\" stroke=\"" +
            color_for(i) + "\" stroke-width=\"1.5\"/>\n");
    doc.text(kMarginLeft + 10, kMarginTop + 16 + 14 * static_cast<double>(i),
             c.name + " (AUC " + format_number(c.auc) + ")", 11, "start");
  }
  doc.text(X(0.5), kHeight - 20, "false positive rate", 12, "middle");
  return doc.finish();
}

std::string histogram(const std::vector<double>& values, int bins, const std::string& title) {
  if (values.empty() || bins < 1) throw std::invalid_argument("histogram: no data");
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const double lo = *mn;
  const double span = std::max(*mx - lo, 1e-12);
  std::vector<long> counts(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    auto b = static_cast<std::size_t>(std::min<double>(
        (v - lo) / span * bins, static_cast<double>(bins) - 1.0));
    ++counts[b];
  }
  const long cmax = *std::max_element(counts.begin(), counts.end());

  Doc doc{title};
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const double bw = plot_w / bins;
  for (int b = 0; b < bins; ++b) {
    const double h = plot_h * static_cast<double>(counts[static_cast<std::size_t>(b)]) /
                     static_cast<double>(cmax);
    doc.raw("<rect class=\"bin\" data-count=\"" +
            std::to_string(counts[static_cast<std::size_t>(b)]) + "\" data-lo=\"" +
            format_number(lo + span * b / bins) + "\" data-hi=\"" +
            format_number(lo + span * (b + 1) / bins) + "\" x=\"" +
            format_number(kMarginLeft + bw * b) + "\" y=\"" +
            format_number(kMarginTop + plot_h - h) + "\" width=\"" + format_number(bw) +
            "\" height=\"" + format_number(h) + "\" fill=\"" + color_for(0) + "\"/>\n");
  }
  return doc.finish();
}

}  // namespace stylo::svg
