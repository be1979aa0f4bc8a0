#include "metarate/pwl.hpp"

#include <algorithm>

namespace metarate {

PwlFunction::PwlFunction(std::vector<Breakpoint> points) : pts_(std::move(points)) {
  if (pts_.size() < 2) throw DomainError("PwlFunction: need at least 2 breakpoints");
  if (pts_.front().x != UnitRational::zero())
    throw DomainError("PwlFunction: first breakpoint must be at x=0");
  if (pts_.back().x != UnitRational::one())
    throw DomainError("PwlFunction: last breakpoint must be at x=1");
  for (std::size_t i = 1; i < pts_.size(); ++i)
    if (!(pts_[i - 1].x < pts_[i].x))
      throw DomainError("PwlFunction: breakpoint x values must be strictly increasing");
  slopes_.reserve(pts_.size() - 1);
  for (std::size_t i = 1; i < pts_.size(); ++i)
    slopes_.push_back((pts_[i].y.value() - pts_[i - 1].y.value()) /
                      (pts_[i].x.value() - pts_[i - 1].x.value()));
}

PwlFunction PwlFunction::identity() {
  return PwlFunction({{UnitRational::zero(), UnitRational::zero()},
                      {UnitRational::one(), UnitRational::one()}});
}

PwlFunction PwlFunction::constant(const UnitRational& y) {
  return PwlFunction({{UnitRational::zero(), y}, {UnitRational::one(), y}});
}

UnitRational PwlFunction::eval(const UnitRational& x) const {
  auto it = std::upper_bound(
      pts_.begin(), pts_.end(), x,
      [](const UnitRational& v, const Breakpoint& b) { return v < b.x; });
  if (it == pts_.begin()) return pts_.front().y;  // x == 0
  if (it == pts_.end()) return pts_.back().y;     // x == 1
  const std::size_t seg = static_cast<std::size_t>(it - pts_.begin()) - 1;
  const Breakpoint& lo = pts_[seg];
  return UnitRational(lo.y.value() + slopes_[seg] * (x.value() - lo.x.value()));
}

PosRational PwlFunction::lipschitz_constant() const {
  Rational best(0L);
  for (const Rational& slope : slopes_) {
    const Rational mag = abs(slope);
    if (mag > best) best = mag;
  }
  if (best.sign() == 0) return PosRational(Rational(1L));  // constant map
  return PosRational(best);
}

bool PwlFunction::is_constant() const {
  for (std::size_t i = 1; i < pts_.size(); ++i)
    if (pts_[i].y != pts_[0].y) return false;
  return true;
}

bool PwlFunction::is_nondecreasing() const {
  for (std::size_t i = 1; i < pts_.size(); ++i)
    if (pts_[i].y < pts_[i - 1].y) return false;
  return true;
}

std::vector<std::pair<UnitRational, UnitRational>> PwlFunction::fixed_intervals_in(
    const UnitRational& a, const UnitRational& b) const {
  if (a > b) throw DomainError("fixed_intervals_in: need a <= b");
  std::vector<std::pair<Rational, Rational>> raw;

  for (std::size_t i = 1; i < pts_.size(); ++i) {
    const Rational x0 = pts_[i - 1].x.value();
    const Rational y0 = pts_[i - 1].y.value();
    const Rational lo = std::max(x0, a.value(), std::less<Rational>());
    const Rational hi = std::min(pts_[i].x.value(), b.value(), std::less<Rational>());
    if (lo > hi) continue;

    // On this segment f(x) - x = (slope - 1)(x - x0) + (y0 - x0).
    const Rational& slope = slopes_[i - 1];
    if (slope == Rational(1L)) {
      if (y0 == x0) raw.emplace_back(lo, hi);  // whole clipped segment fixed
      continue;
    }
    const Rational root = x0 + (x0 - y0) / (slope - Rational(1L));
    if (root >= lo && root <= hi) raw.emplace_back(root, root);
  }

  std::sort(raw.begin(), raw.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  std::vector<std::pair<UnitRational, UnitRational>> merged;
  for (const auto& [lo, hi] : raw) {
    if (!merged.empty() && lo <= merged.back().second.value()) {
      if (hi > merged.back().second.value())
        merged.back().second = UnitRational(hi);
      continue;
    }
    merged.emplace_back(UnitRational(lo), UnitRational(hi));
  }
  return merged;
}

std::optional<FixedPoint> PwlFunction::least_fixed_point_in(
    const UnitRational& a, const UnitRational& b) const {
  const auto intervals = fixed_intervals_in(a, b);
  if (intervals.empty()) return std::nullopt;
  const UnitRational& p = intervals.front().first;
  auto kind = FixedPoint::Kind::on_segment;
  for (const Breakpoint& bp : pts_)
    if (bp.x == p) {
      kind = FixedPoint::Kind::at_breakpoint;
      break;
    }
  return FixedPoint{p, kind};
}

ModulusCheck check_modulus(const PwlFunction& f, const Modulus& w,
                           const std::vector<PosRational>& deltas) {
  if (deltas.empty()) throw DomainError("check_modulus: deltas must be non-empty");
  const PosRational lipschitz = f.lipschitz_constant();
  for (const PosRational& delta : deltas) {
    if (!((w(delta) * lipschitz).value() <= delta.value()))
      return {false, delta};
  }
  return {true, std::nullopt};
}

}  // namespace metarate
