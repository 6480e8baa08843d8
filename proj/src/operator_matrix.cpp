#include "fwn/operator_matrix.hpp"

#include <mutex>

namespace fwn {

SectorBasis::SectorBasis(int dim, Sector sector) : dim_(dim), sector_(sector) {
  if (dim < 1 || dim > kMaxModes) throw DegreeError("invalid mode count");
  const Mask full = full_mask(dim);
  for (Mask m = 0;; ++m) {
    if (in_sector(m, sector)) masks_.push_back(m);
    if (m == full) break;
  }
  std::sort(masks_.begin(), masks_.end(), basis_less);
  position_.assign(static_cast<std::size_t>(full) + 1, -1);
  for (std::size_t i = 0; i < masks_.size(); ++i) position_[masks_[i]] = static_cast<long>(i);
}

std::shared_ptr<const SectorBasis> SectorBasis::get(int dim, Sector sector) {
  static std::mutex lock;
  static std::map<std::pair<int, Sector>, std::shared_ptr<const SectorBasis>> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto& slot = cache[{dim, sector}];
  if (!slot) slot = std::make_shared<const SectorBasis>(dim, sector);
  return slot;
}

}  // namespace fwn
