#ifndef QMINK_COCYCLE_HPP
#define QMINK_COCYCLE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "qmink/random.hpp"

namespace qmink::cocycle {

using complex = std::complex<double>;

struct Params {
  double s = 0.0;

  explicit Params(double s_) : s(s_) {
    if (!std::isfinite(s)) {
      throw std::domain_error("deformation parameter must be finite");
    }
  }
};

inline complex unimodular(double phase) { return std::polar(1.0, phase); }

/// Psi(z1, z2) = exp(-i s Im(z1 conj z2)).
inline complex psi(const Params& p, complex z1, complex z2) {
  return unimodular(-p.s * std::imag(z1 * std::conj(z2)));
}

/// conj Psi(-z1, -z2).
inline complex psi_tilde(const Params& p, complex z1, complex z2) {
  return std::conj(psi(p, -z1, -z2));
}

/// conj Psi(z1, -z1 - z2).
inline complex psi_star(const Params& p, complex z1, complex z2) {
  return std::conj(psi(p, z1, -z1 - z2));
}

/// Omega(z) = exp(-i s/2 Im(z^2)).
inline complex omega(const Params& p, complex z) {
  return unimodular(-0.5 * p.s * std::imag(z * z));
}

/// Psi_g(g') = Psi(g', g).
inline complex psi_family(const Params& p, complex g, complex gp) {
  return psi(p, gp, g);
}

inline complex psi_tilde_family(const Params& p, complex g, complex gp) {
  return psi_tilde(p, gp, g);
}

/// |Psi(a,b)Psi(a+b,c) - Psi(b,c)Psi(a,b+c)| and the same for Psi~.
inline double cocycle_residual(const Params& p, complex a, complex b,
                               complex c) {
  double r1 = std::abs(psi(p, a, b) * psi(p, a + b, c) -
                       psi(p, b, c) * psi(p, a, b + c));
  double r2 = std::abs(psi_tilde(p, a, b) * psi_tilde(p, a + b, c) -
                       psi_tilde(p, b, c) * psi_tilde(p, a, b + c));
  return std::max(r1, r2);
}

/// The shift identity for Psi* exactly as it is usually stated:
/// Psi*(x+u,y+v) = Psi*(x,y) Psi_u(x) Psi~_v(y) Psi(-x-y,-v) conj Psi(u,-x-y).
inline double sumup_residual(const Params& p, complex x, complex y, complex u,
                             complex v) {
  complex lhs = psi_star(p, x + u, y + v);
  complex rhs = psi_star(p, x, y) * psi_family(p, u, x) *
                psi_tilde_family(p, v, y) * psi(p, -x - y, -v) *
                std::conj(psi(p, u, -x - y));
  return std::abs(lhs - rhs);
}

/// Same identity with the missing constant phase Psi(u, v) restored.
inline double sumup_corrected_residual(const Params& p, complex x, complex y,
                                       complex u, complex v) {
  complex lhs = psi_star(p, x + u, y + v);
  complex rhs = psi_star(p, x, y) * psi_family(p, u, x) *
                psi_tilde_family(p, v, y) * psi(p, -x - y, -v) *
                std::conj(psi(p, u, -x - y)) * psi(p, u, v);
  return std::abs(lhs - rhs);
}

/// |Omega(z+w) - Omega(z)Omega(w)exp(-is Im(zw))|.
inline double omega_residual(const Params& p, complex z, complex w) {
  return std::abs(omega(p, z + w) -
                  omega(p, z) * omega(p, w) *
                      unimodular(-p.s * std::imag(z * w)));
}

struct SampleSpec {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  double radius = 2.0;
};

struct Result {
  std::string identity;
  double s = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double radius = 0.0;
  double max_residual = 0.0;
};

namespace detail {

template <std::size_t N, class F>
Result sample_max(const char* name, const Params& p, const SampleSpec& spec,
                  F&& f) {
  if (spec.samples == 0) {
    throw std::invalid_argument("at least one sample is required");
  }
  Sampler rng(spec.seed);
  double worst = 0.0;
  for (std::size_t k = 0; k < spec.samples; ++k) {
    complex pts[N];
    for (auto& z : pts) {
      z = rng.disk(spec.radius);
    }
    double r;
    if constexpr (N == 2) {
      r = f(pts[0], pts[1]);
    } else if constexpr (N == 3) {
      r = f(pts[0], pts[1], pts[2]);
    } else {
      r = f(pts[0], pts[1], pts[2], pts[3]);
    }
    worst = std::max(worst, r);
  }
  return {name, p.s, spec.samples, spec.seed, spec.radius, worst};
}

}  // namespace detail

inline Result check_cocycle_identity(const Params& p, const SampleSpec& spec) {
  return detail::sample_max<3>(
      "cocycle", p, spec,
      [&](complex a, complex b, complex c) {
        return cocycle_residual(p, a, b, c);
      });
}

inline Result check_sumup(const Params& p, const SampleSpec& spec) {
  return detail::sample_max<4>(
      "sumup", p, spec, [&](complex x, complex y, complex u, complex v) {
        return sumup_residual(p, x, y, u, v);
      });
}

inline Result check_sumup_corrected(const Params& p, const SampleSpec& spec) {
  return detail::sample_max<4>(
      "sumup_corrected", p, spec,
      [&](complex x, complex y, complex u, complex v) {
        return sumup_corrected_residual(p, x, y, u, v);
      });
}

inline Result check_omega_identity(const Params& p, const SampleSpec& spec) {
  return detail::sample_max<2>(
      "omega", p, spec,
      [&](complex z, complex w) { return omega_residual(p, z, w); });
}

}  // namespace qmink::cocycle

#endif  // QMINK_COCYCLE_HPP
