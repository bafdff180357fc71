#include "coarse/control_table.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "coarse/common.hpp"

namespace coarse {

ControlTable::ControlTable(std::vector<double> scales, std::vector<double> bounds)
    : scales_(std::move(scales)), bounds_(std::move(bounds)) {
  if (scales_.size() != bounds_.size()) {
    throw std::invalid_argument("control table: scale/bound length mismatch");
  }
  for (std::size_t i = 0; i + 1 < scales_.size(); ++i) {
    if (!(scales_[i] < scales_[i + 1])) {
      throw std::invalid_argument("control table: scales must be strictly increasing");
    }
    if (bounds_[i] > bounds_[i + 1] + kTol) {
      throw std::invalid_argument("control table: bounds must be nondecreasing");
    }
  }
}

double ControlTable::max_scale() const {
  if (scales_.empty()) throw std::out_of_range("control table is empty");
  return scales_.back();
}

double ControlTable::at(double scale) const {
  auto it = std::lower_bound(scales_.begin(), scales_.end(), scale - kTol);
  if (it == scales_.end()) {
    std::ostringstream msg;
    msg << "control table query " << scale << " exceeds tabulated grid (max "
        << (scales_.empty() ? 0.0 : scales_.back()) << ")";
    throw std::out_of_range(msg.str());
  }
  return bounds_[static_cast<std::size_t>(it - scales_.begin())];
}

bool ControlTable::covers(double scale) const {
  return !scales_.empty() && scale - kTol <= scales_.back();
}

bool ControlTable::dominates(const ControlTable& other) const {
  for (std::size_t i = 0; i < other.size(); ++i) {
    if (!covers(other.scale(i))) return false;
    if (at(other.scale(i)) + kTol < other.bound(i)) return false;
  }
  return true;
}

ControlTable identity_table(const std::vector<double>& scales) {
  return ControlTable(scales, scales);
}

}  // namespace coarse
