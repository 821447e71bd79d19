#include <achieveset/interval_union.hpp>

#include <algorithm>
#include <stdexcept>

namespace achieveset {

IntervalUnion IntervalUnion::normalize(std::vector<ClosedInterval> raw) {
  if (raw.empty()) throw std::invalid_argument("IntervalUnion: empty input");
  for (const auto& iv : raw)
    if (iv.a > iv.b) throw std::invalid_argument("IntervalUnion: inverted interval");
  std::sort(raw.begin(), raw.end(), [](const ClosedInterval& x, const ClosedInterval& y) {
    return x.a < y.a || (x.a == y.a && x.b < y.b);
  });
  IntervalUnion out;
  out.ivs_.reserve(raw.size());
  for (auto& iv : raw) {
    if (!out.ivs_.empty() && iv.a <= out.ivs_.back().b) {
      if (iv.b > out.ivs_.back().b) out.ivs_.back().b = std::move(iv.b);
    } else {
      out.ivs_.push_back(std::move(iv));
    }
  }
  return out;
}

IntervalUnion IntervalUnion::points(const std::vector<Rational>& pts) {
  std::vector<ClosedInterval> raw;
  raw.reserve(pts.size());
  for (const auto& p : pts) raw.push_back({p, p});
  return normalize(std::move(raw));
}

IntervalUnion IntervalUnion::single(const Rational& a, const Rational& b) {
  return normalize({{a, b}});
}

IntervalUnion IntervalUnion::point(const Rational& p) { return single(p, p); }

IntervalUnion translate(const IntervalUnion& A, const Rational& c) {
  IntervalUnion out;
  out.ivs_.reserve(A.ivs_.size());
  for (const auto& iv : A.ivs_) out.ivs_.push_back({iv.a + c, iv.b + c});
  return out;
}

IntervalUnion scale(const IntervalUnion& A, const Rational& c) {
  if (c == 0) return IntervalUnion::point(Rational(0));
  IntervalUnion out;
  out.ivs_.reserve(A.ivs_.size());
  if (c > 0) {
    for (const auto& iv : A.ivs_) out.ivs_.push_back({c * iv.a, c * iv.b});
  } else {
    for (auto it = A.ivs_.rbegin(); it != A.ivs_.rend(); ++it)
      out.ivs_.push_back({c * it->b, c * it->a});
  }
  return out;
}

IntervalUnion set_union(const IntervalUnion& A, const IntervalUnion& B) {
  // linear merge of two canonical unions
  IntervalUnion out;
  out.ivs_.reserve(A.ivs_.size() + B.ivs_.size());
  std::size_t i = 0, j = 0;
  auto push = [&out](const ClosedInterval& iv) {
    if (!out.ivs_.empty() && iv.a <= out.ivs_.back().b) {
      if (iv.b > out.ivs_.back().b) out.ivs_.back().b = iv.b;
    } else {
      out.ivs_.push_back(iv);
    }
  };
  while (i < A.ivs_.size() || j < B.ivs_.size()) {
    if (j == B.ivs_.size() || (i < A.ivs_.size() && A.ivs_[i].a <= B.ivs_[j].a))
      push(A.ivs_[i++]);
    else
      push(B.ivs_[j++]);
  }
  return out;
}

IntervalUnion fatten(const IntervalUnion& A, const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("fatten: lo > hi");
  IntervalUnion out;
  out.ivs_.reserve(A.ivs_.size());
  for (const auto& iv : A.ivs_) {
    ClosedInterval f{iv.a + lo, iv.b + hi};
    if (!out.ivs_.empty() && f.a <= out.ivs_.back().b) {
      if (f.b > out.ivs_.back().b) out.ivs_.back().b = f.b;
    } else {
      out.ivs_.push_back(std::move(f));
    }
  }
  return out;
}

bool contains(const IntervalUnion& A, const IntervalUnion& B) {
  const auto& a = A.intervals();
  std::size_t i = 0;
  for (const auto& biv : B.intervals()) {
    while (i < a.size() && a[i].b < biv.a) ++i;
    if (i == a.size() || a[i].a > biv.a || a[i].b < biv.b) return false;
  }
  return true;
}

bool contains_point(const IntervalUnion& A, const Rational& t) {
  const auto& ivs = A.intervals();
  std::size_t lo = 0, hi = ivs.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (ivs[mid].b < t)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < ivs.size() && ivs[lo].a <= t && t <= ivs[lo].b;
}

Rational point_distance(const Rational& t, const IntervalUnion& A) {
  const auto& ivs = A.intervals();
  std::size_t lo = 0, hi = ivs.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (ivs[mid].b < t)
      lo = mid + 1;
    else
      hi = mid;
  }
  // ivs[lo] is the first interval with b >= t (if any)
  Rational best(-1);
  if (lo < ivs.size()) {
    if (ivs[lo].a <= t) return Rational(0);
    best = ivs[lo].a - t;
  }
  if (lo > 0) {
    Rational d = t - ivs[lo - 1].b;
    if (best < 0 || d < best) best = d;
  }
  return best;
}

Rational directed_hausdorff(const IntervalUnion& A, const IntervalUnion& B) {
  // sup over t in A of d(t, B). On each component of A the distance function
  // to B is piecewise linear with local maxima at component endpoints and at
  // midpoints of B's gaps; it suffices to scan those candidates.
  Rational best(0);
  auto consider = [&](const Rational& t) {
    Rational d = point_distance(t, B);
    if (d > best) best = d;
  };
  for (const auto& iv : A.intervals()) {
    consider(iv.a);
    consider(iv.b);
  }
  const auto& b = B.intervals();
  for (std::size_t j = 0; j + 1 < b.size(); ++j) {
    Rational mid = (b[j].b + b[j + 1].a) / 2;
    // clamp the midpoint into A: nearest A-point to mid
    // candidates: mid itself if in A, else the A-endpoints around it
    if (contains_point(A, mid)) {
      consider(mid);
    }
  }
  // also B-hull exterior does not matter: A endpoints already cover it
  return best;
}

Rational hausdorff(const IntervalUnion& A, const IntervalUnion& B) {
  return rmax(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

Rational max_gap(const IntervalUnion& A, const Rational& wa, const Rational& wb) {
  if (wa > wb) throw std::invalid_argument("max_gap: inverted window");
  if (wb < A.min() || wa > A.max())
    throw std::invalid_argument("max_gap: window does not intersect the hull");
  Rational best(0);
  const auto& ivs = A.intervals();
  for (std::size_t i = 0; i + 1 < ivs.size(); ++i) {
    Rational glo = rmax(ivs[i].b, wa);
    Rational ghi = rmin(ivs[i + 1].a, wb);
    if (ghi > glo && ghi - glo > best) best = ghi - glo;
  }
  return best;
}

}  // namespace achieveset
