#include "stylo/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stylo::stats {

MetricReport evaluate_metrics(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("evaluate_metrics: size mismatch");
  if (scores.empty()) throw std::invalid_argument("evaluate_metrics: empty input");
  for (double s : scores)
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("evaluate_metrics: score outside [0,1]");

  long pos = 0, neg = 0;
  for (int y : labels) (y == 1 ? pos : neg)++;

  MetricReport r;

  // Confusion and per-class F1 at threshold 0.5.
  long tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool pred = scores[i] >= 0.5;
    if (pred && labels[i] == 1) ++tp;
    else if (pred && labels[i] == 0) ++fp;
    else if (!pred && labels[i] == 0) ++tn;
    else ++fn;
  }
  r.confusion = {tn, fp, fn, tp};
  auto f1 = [](long tp_, long fp_, long fn_) {
    const double denom = 2.0 * tp_ + fp_ + fn_;
    return denom > 0 ? 2.0 * tp_ / denom : 0.0;
  };
  r.f1_positive = f1(tp, fp, fn);
  r.f1_negative = f1(tn, fn, fp);

  if (pos == 0 || neg == 0) {
    r.auc_defined = false;
    return r;
  }

  // ROC: sort by score descending, one step per distinct score value.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  r.roc_points.emplace_back(0.0, 0.0);
  long cum_tp = 0, cum_fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    while (i < order.size() && scores[order[i]] == s) {
      (labels[order[i]] == 1 ? cum_tp : cum_fp)++;
      ++i;
    }
    r.roc_points.emplace_back(static_cast<double>(cum_fp) / static_cast<double>(neg),
                              static_cast<double>(cum_tp) / static_cast<double>(pos));
  }

  double auc = 0.0;
  for (std::size_t k = 1; k < r.roc_points.size(); ++k) {
    const auto& [x0, y0] = r.roc_points[k - 1];
    const auto& [x1, y1] = r.roc_points[k];
    auc += (x1 - x0) * (y0 + y1) / 2.0;
  }
  r.auc = auc;
  return r;
}

}  // namespace stylo::stats
