#include "panelwave/surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "panelwave/errors.hpp"

namespace panelwave {

namespace {

// Signed side of point x relative to the oriented line through e along u.
double line_side(cplx u, cplx e, cplx x) {
  return (std::conj(u) * (x - e)).imag();
}

// Distance from point p to the closed segment [a, b], and the closest point.
double segment_distance(cplx p, cplx a, cplx b, cplx* closest = nullptr) {
  cplx d = b - a;
  double len2 = std::norm(d);
  double t = len2 > 0.0 ? std::clamp(((p - a) * std::conj(d)).real() / len2,
                                     0.0, 1.0)
                        : 0.0;
  cplx q = a + t * d;
  if (closest) *closest = q;
  return std::abs(p - q);
}

// Proper crossing of the open leg (a,b) with the slightly extended segment
// [p,q]; returns the leg parameter in (0,1) or a negative value.
double crossing_param(cplx a, cplx b, cplx p, cplx q) {
  cplx d1 = b - a, d2 = q - p;
  double det = d1.real() * d2.imag() - d1.imag() * d2.real();
  double scale = std::abs(d1) * std::abs(d2);
  if (std::abs(det) < 1e-12 * scale) return -1.0;
  cplx r = p - a;
  double t = (r.real() * d2.imag() - r.imag() * d2.real()) / det;
  double u = (r.real() * d1.imag() - r.imag() * d1.real()) / det;
  if (t > 1e-9 && t < 1.0 - 1e-9 && u > -0.02 && u < 1.02) return t;
  return -1.0;
}

// Continuation of the segment factor sqrt(1-x^2) (positive on the open
// segment (-1,1)) to a point x0 off the segment, matching the on-segment
// values when approached from the side sign(Im x0).
cplx segment_factor_off(cplx x0) {
  double side = (x0.imag() >= 0.0) ? 1.0 : -1.0;
  return -iu * side * sqrt_off_segment(x0);
}

}  // namespace

EllipticSurface::EllipticSurface(const ModelParams& p, int cheb_n,
                                 int legendre_n)
    : params_(&p), cheb_(chebyshev_nodes(cheb_n)), gl_(legendre_n) {
  const cplx s1 = p.s1, s2 = p.s2;
  c1_ = 0.5 * (s1 + s2);
  h1_ = 0.5 * (s2 - s1);
  cb_ = 0.5 * (s2 - s1);  // midpoint of the segment [s2, -s1]
  hb_ = 0.5 * (-s1 - s2);
  cut_scale_ = std::abs(s2 - s1);

  // Both cuts must stay clear of the real line (the lower one is the mirror
  // image of the upper one, so one clearance check covers both).
  const double clearance = std::min(s1.imag(), s2.imag());
  if (!(clearance > 1e-9 * std::max(std::abs(s1), std::abs(s2)))) {
    std::ostringstream os;
    os << "branch cut [" << s1 << ", " << s2
       << "] touches the integration contour";
    throw CutOnContourError(os.str());
  }

  // Raw periods, then the a-cycle orientation that puts Im(B/A) > 0.
  auto one = [](cplx) { return cplx(1.0); };
  cplx A_raw = 2.0 * a_onesided(one);
  B_ = 2.0 * b_onesided(one);
  sigma_a_ = (B_ / A_raw).imag() > 0.0 ? 1 : -1;
  A_ = double(sigma_a_) * A_raw;
  Bhat_ = B_ / A_;
  k1_ = -0.5 + 0.5 * Bhat_;
}

cplx EllipticSurface::a_onesided(const std::function<cplx(cplx)>& g) const {
  // On the left bank of the cut [s1,s2] the local square-root factor equals
  // i h1 sqrt(1-x^2), which cancels the Chebyshev weight exactly.
  const int N = static_cast<int>(cheb_.size());
  cplx acc = 0.0;
  for (double x : cheb_) {
    cplx t = c1_ + h1_ * x;
    acc += g(t) / sqrt_segment(t, -params_->s2, -params_->s1);
  }
  return -iu * (pi / N) * acc;
}

cplx EllipticSurface::b_onesided(const std::function<cplx(cplx)>& g) const {
  const int N = static_cast<int>(cheb_.size());
  cplx acc = 0.0;
  for (double x : cheb_) {
    cplx t = cb_ + hb_ * x;
    acc += hb_ * std::sqrt(1.0 - x * x) * g(t) / f_sqrt(t, *params_);
  }
  return (pi / N) * acc;
}

cplx EllipticSurface::a_cycle(const std::function<cplx(cplx)>& g) const {
  return 2.0 * double(sigma_a_) * a_onesided(g);
}

cplx EllipticSurface::b_cycle(const std::function<cplx(cplx)>& g) const {
  return 2.0 * b_onesided(g);
}

cplx EllipticSurface::a_cycle_cauchy(cplx s) const {
  const int N = static_cast<int>(cheb_.size());
  const cplx x0 = (s - c1_) / h1_;
  std::vector<cplx> H(N);
  for (int i = 0; i < N; ++i) {
    cplx t = c1_ + h1_ * cheb_[i];
    H[i] = 1.0 / sqrt_segment(t, -params_->s2, -params_->s1);
  }
  cplx H0 = 1.0 / sqrt_segment(s, -params_->s2, -params_->s1);
  return 2.0 * double(sigma_a_) * (-iu / h1_) *
         chebyshev_cauchy(cheb_, H, x0, H0);
}

cplx EllipticSurface::b_cycle_cauchy(cplx s) const {
  const int N = static_cast<int>(cheb_.size());
  const cplx x0 = (s - cb_) / hb_;
  std::vector<cplx> H(N);
  for (int i = 0; i < N; ++i) {
    cplx t = cb_ + hb_ * cheb_[i];
    H[i] = std::sqrt(1.0 - cheb_[i] * cheb_[i]) / f_sqrt(t, *params_);
  }
  cplx H0 = segment_factor_off(x0) / f_sqrt(s, *params_);
  return 2.0 * chebyshev_cauchy(cheb_, H, x0, H0);
}

std::vector<cplx> EllipticSurface::canonical_path(cplx zeta) const {
  const cplx s1 = params_->s1, s2 = params_->s2;
  struct Cut {
    cplx e0, e1;
  };
  const Cut cuts[2] = {{s1, s2}, {-s2, -s1}};
  const double rho = 0.1 * cut_scale_;   // detour radius around a branch point
  const double near_r = 0.08 * cut_scale_;  // proximity that forces a detour
  const cplx start = -s2;

  std::vector<cplx> path = {start, zeta};

  auto near_vertex = [&](const cplx& v, cplx e) {
    return std::abs(v - e) < 1.2 * rho;
  };

  for (int round = 0; round < 64; ++round) {
    bool changed = false;

    // The path starts at a branch point of the lower cut; if it exits along
    // that cut it would run straight into the square-root singularity, so
    // lift it off perpendicular first.
    {
      cplx u = (-s1 + s2) / std::abs(-s1 + s2);  // lower cut, start -> far end
      cplx d = path[1] - path[0];
      double along = (std::conj(u) * d).real();
      double across = std::abs(line_side(u, 0.0, d));
      if (along > 0.0 && across < 0.25 * along) {
        double side = line_side(u, start, zeta);
        cplx lift = start + rho * iu * u * (side >= 0.0 ? 1.0 : -1.0);
        if (std::abs(path[1] - lift) > 1e-9 * cut_scale_) {
          path.insert(path.begin() + 1, lift);
          changed = true;
        }
      }
    }

    for (size_t leg = 0; leg + 1 < path.size() && !changed; ++leg) {
      const cplx a = path[leg], b = path[leg + 1];
      if (std::abs(b - a) < 1e-12 * cut_scale_) continue;
      for (const Cut& cut : cuts) {
        // A proper crossing is routed around the nearer branch point with a
        // three-vertex circuit (beside / beyond / beside the tip).
        double tx = crossing_param(a, b, cut.e0, cut.e1);
        if (tx >= 0.0) {
          cplx x = a + tx * (b - a);
          bool near0 = std::abs(x - cut.e0) < std::abs(x - cut.e1);
          cplx e = near0 ? cut.e0 : cut.e1;
          cplx o = near0 ? cut.e1 : cut.e0;
          cplx u = (e - o) / std::abs(e - o);
          double sa = line_side(u, e, a);
          if (sa == 0.0) sa = 1.0;
          sa = sa > 0.0 ? 1.0 : -1.0;
          cplx w[3] = {e + rho * sa * iu * u, e + rho * u,
                       e - rho * sa * iu * u};
          size_t at = leg + 1;
          for (cplx v : w) {
            if (std::abs(v - path[at - 1]) > 1e-9 * cut_scale_ &&
                std::abs(v - path[at]) > 1e-9 * cut_scale_) {
              path.insert(path.begin() + at, v);
              ++at;
              changed = true;
            }
          }
          if (changed) break;
        }
        // Passing close to a branch point without crossing: push the path
        // radially away from it. Legs that already belong to a detour around
        // this point (a vertex within 1.2 rho of it) are left alone.
        for (cplx e : {cut.e0, cut.e1}) {
          if (near_vertex(a, e) || near_vertex(b, e)) continue;
          cplx closest;
          if (segment_distance(e, a, b, &closest) < near_r) {
            cplx dir = closest - e;
            cplx v = std::abs(dir) > 1e-12 * cut_scale_
                         ? e + rho * dir / std::abs(dir)
                         : e + rho * iu * (b - a) / std::abs(b - a);
            path.insert(path.begin() + leg + 1, v);
            changed = true;
            break;
          }
        }
        if (changed) break;
      }
    }
    if (!changed) {
      // Final safety check: no leg may cross either cut.
      for (size_t leg = 0; leg + 1 < path.size(); ++leg) {
        for (const Cut& cut : cuts) {
          if (crossing_param(path[leg], path[leg + 1], cut.e0, cut.e1) >=
              0.0) {
            std::ostringstream os;
            os << "path to " << zeta << " could not avoid the branch cuts";
            throw PathError(os.str());
          }
        }
      }
      return path;
    }
  }
  std::ostringstream os;
  os << "detour planning around the branch cuts did not converge for "
     << "endpoint " << zeta;
  throw PathError(os.str());
}

cplx EllipticSurface::path_integral(const std::vector<cplx>& path,
                                    const std::function<cplx(cplx)>& g) const {
  cplx acc = 0.0;
  for (size_t leg = 0; leg + 1 < path.size(); ++leg) {
    const cplx a = path[leg], b = path[leg + 1];
    if (std::abs(b - a) < 1e-14 * cut_scale_) continue;
    if (leg == 0) {
      // t = a + (b-a) sigma^2 absorbs the inverse-square-root singularity at
      // the branch point a: 2 sigma g / f^{1/2}(t(sigma)) is smooth.
      for (size_t i = 0; i < gl_.x.size(); ++i) {
        double sig = 0.5 * (gl_.x[i] + 1.0);
        cplx t = a + (b - a) * sig * sig;
        acc += 0.5 * gl_.w[i] * 2.0 * sig * (b - a) * g(t) /
               f_sqrt(t, *params_);
      }
    } else {
      for (size_t i = 0; i < gl_.x.size(); ++i) {
        double x = 0.5 * (gl_.x[i] + 1.0);
        cplx t = a + (b - a) * x;
        acc += 0.5 * gl_.w[i] * (b - a) * g(t) / f_sqrt(t, *params_);
      }
    }
  }
  return acc;
}

cplx EllipticSurface::path_cauchy(const std::vector<cplx>& path, cplx s) const {
  cplx acc = 0.0;
  for (size_t leg = 0; leg + 1 < path.size(); ++leg) {
    const cplx a = path[leg], b = path[leg + 1];
    if (std::abs(b - a) < 1e-14 * cut_scale_) continue;
    if (leg == 0) {
      // In sigma (t = a + (b-a) sigma^2) the Cauchy kernel splits into simple
      // poles at +-sigma_p with sigma_p^2 = (s-a)/(b-a); subtract each and
      // integrate the subtracted kernels in closed form. The principal log is
      // exact for a pole off a straight leg.
      const cplx sp = std::sqrt((s - a) / (b - a));
      auto phi = [&](cplx sig) {
        cplx t = a + (b - a) * sig * sig;
        return 2.0 * sig / f_sqrt(t, *params_);
      };
      const cplx phi_p = 2.0 * sp / f_sqrt(s, *params_);
      cplx sum = 0.0;
      for (size_t i = 0; i < gl_.x.size(); ++i) {
        cplx sig = 0.5 * (gl_.x[i] + 1.0);
        cplx v = phi(sig);
        sum += 0.5 * gl_.w[i] *
               ((v - phi_p) / (sig - sp) - (v + phi_p) / (sig + sp));
      }
      sum += phi_p *
             (std::log((1.0 - sp) / (-sp)) + std::log((1.0 + sp) / sp));
      acc += sum / (2.0 * sp);
    } else {
      const cplx hs = 1.0 / f_sqrt(s, *params_);
      cplx sum = 0.0;
      for (size_t i = 0; i < gl_.x.size(); ++i) {
        double x = 0.5 * (gl_.x[i] + 1.0);
        cplx t = a + (b - a) * x;
        sum += 0.5 * gl_.w[i] * (b - a) *
               (1.0 / f_sqrt(t, *params_) - hs) / (t - s);
      }
      acc += sum + hs * std::log((b - s) / (a - s));
    }
  }
  return acc;
}

cplx EllipticSurface::omega_hat(const SheetPoint& q) const {
  auto one = [](cplx) { return cplx(1.0); };
  cplx val = path_integral(canonical_path(q.s), one) / A_;
  return (q.sheet == 1) ? val : -val;
}

}  // namespace panelwave
