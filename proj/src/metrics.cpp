#include "lesionseg/metrics.hpp"

namespace lesionseg {

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt) {
  require_same_size(pred, gt, "confusion: prediction and ground truth differ in size");
  ConfusionCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] != 0;
    const bool g = gt[i] != 0;
    if (p && g) ++c.tp;
    else if (p) ++c.fp;
    else if (g) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double jaccard(const ConfusionCounts& c) noexcept {
  const std::uint64_t denom = c.tp + c.fp + c.fn;
  if (denom == 0) return 1.0;
  return static_cast<double>(c.tp) / static_cast<double>(denom);
}

double mean_jaccard(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyList, "mean_jaccard: no values");
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace lesionseg
