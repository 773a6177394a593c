#pragma once

// Special functions behind the closed-form outage expressions: regularized
// incomplete gamma, Kummer M, Tricomi U, Whittaker W, Beta, and enumeration
// of the multinomial index sets.
//
// Every function is a template over the working type and is instantiated for
// `double` and `fdrs::quad`. All functions are pure and reentrant.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <type_traits>
#include <vector>

#include "fdrs/error.hpp"
#include "fdrs/quad.hpp"

namespace fdrs::specfun {

struct Accuracy {
  double rel_tol = 1e-12;
  int max_terms = 10000;
};

/// Settings used by the extended-precision closed-form kernels.
inline constexpr Accuracy kExtended{1e-32, 200000};

namespace detail {

template <class T>
T tolerance(const Accuracy& acc) {
  const T eps = std::numeric_limits<T>::epsilon();
  const T tol = T(acc.rel_tol);
  return tol > eps ? tol : eps;
}

inline void check(const Accuracy& acc) {
  if (!(acc.rel_tol > 0) || acc.max_terms < 1) {
    throw DomainError("Accuracy requires rel_tol > 0 and max_terms >= 1");
  }
}

// Neumaier's variant of Kahan summation.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    using std::abs;
    const T t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void scale(T f) {
    sum_ *= f;
    c_ *= f;
  }
  T value() const { return sum_ + c_; }

 private:
  T sum_{0};
  T c_{0};
};

template <class T>
bool is_integer(T x) {
  using std::abs;
  using std::round;
  const T r = round(x);
  return abs(x - r) <= T(1e-12) * (abs(r) > 1 ? abs(r) : T(1));
}

template <class T>
bool is_nonpositive_integer(T x) {
  return x <= T(1e-12) && is_integer(x);
}

template <class T>
int to_int(T x) {
  using std::round;
  return static_cast<int>(round(x));
}

// P(a, x) from the power series; used for x < a + 1.
template <class T>
T lower_gamma_series(T a, T x, const Accuracy& acc) {
  using std::abs;
  using std::exp;
  using std::lgamma;
  using std::log;
  const T tol = tolerance<T>(acc);
  T term = 1 / a;
  CompensatedSum<T> sum;
  sum.add(term);
  for (int n = 1; n <= acc.max_terms; ++n) {
    term *= x / (a + n);
    sum.add(term);
    if (abs(term) <= tol * abs(sum.value())) {
      return exp(a * log(x) - x - lgamma(a)) * sum.value();
    }
  }
  throw NonConvergence("reg_lower_gamma: series did not converge");
}

// Q(a, x) from the Legendre continued fraction (modified Lentz); x >= a + 1.
template <class T>
T upper_gamma_fraction(T a, T x, const Accuracy& acc) {
  using std::abs;
  using std::exp;
  using std::lgamma;
  using std::log;
  const T tol = tolerance<T>(acc);
  const T tiny = std::numeric_limits<T>::min() / std::numeric_limits<T>::epsilon();
  T b = x + 1 - a;
  T c = 1 / tiny;
  T d = 1 / b;
  T h = d;
  for (int i = 1; i <= acc.max_terms; ++i) {
    const T an = -T(i) * (T(i) - a);
    b += 2;
    d = an * d + b;
    if (abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (abs(c) < tiny) c = tiny;
    d = 1 / d;
    const T delta = d * c;
    h *= delta;
    if (abs(delta - 1) <= tol) {
      return exp(a * log(x) - x - lgamma(a)) * h;
    }
  }
  throw NonConvergence("reg_upper_gamma: continued fraction did not converge");
}

template <class T>
void check_gamma_args(T a, T x) {
  if (!(a > 0)) throw DomainError("incomplete gamma: shape must be positive");
  if (!(x >= 0)) throw DomainError("incomplete gamma: argument must be nonnegative");
}

// Σ (a)_n / (b)_n z^n / n! for z >= 0.
template <class T>
T kummer_series(T a, T b, T z, const Accuracy& acc) {
  using std::abs;
  const T tol = tolerance<T>(acc);
  CompensatedSum<T> sum;
  sum.add(1);
  T term = 1;
  for (int n = 0; n < acc.max_terms; ++n) {
    const T ratio = (a + n) / (b + n) * z / (n + 1);
    term *= ratio;
    if (term == 0) return sum.value();
    sum.add(term);
    if (abs(ratio) < 1 && abs(term) <= tol * abs(sum.value())) return sum.value();
  }
  throw NonConvergence("kummer_m: series did not converge within max_terms");
}

template <class T>
T pochhammer(T x, int n) {
  T r = 1;
  for (int i = 0; i < n; ++i) r *= x + i;
  return r;
}

// U(-n, b, z) = (-1)^n Σ_j C(n, j) (b + j)_{n-j} (-z)^j, i.e. (-1)^n n! L_n^{(b-1)}(z).
template <class T>
T tricomi_u_polynomial(int n, T b, T z) {
  CompensatedSum<T> sum;
  T binom = 1;
  T zpow = 1;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) {
      binom = binom * T(n - j + 1) / T(j);
      zpow *= -z;
    }
    sum.add(binom * pochhammer(b + j, n - j) * zpow);
  }
  return (n % 2 == 0) ? sum.value() : -sum.value();
}

// U(a, b, z) ~ z^{-a} Σ (a)_n (a - b + 1)_n / n! (-z)^{-n}. Returns false if the
// terms start growing before reaching tolerance.
template <class T>
bool tricomi_u_asymptotic(T a, T b, T z, const Accuracy& acc, T& out) {
  using std::abs;
  using std::pow;
  const T tol = tolerance<T>(acc);
  CompensatedSum<T> sum;
  sum.add(1);
  T term = 1;
  for (int n = 0; n < acc.max_terms; ++n) {
    const T next = term * (a + n) * (a - b + 1 + n) / (T(n + 1) * -z);
    if (next == 0) break;
    if (abs(next) > abs(term)) return false;
    term = next;
    sum.add(term);
    if (abs(term) <= tol * abs(sum.value())) break;
  }
  out = pow(z, -a) * sum.value();
  return true;
}

template <class T>
T reg_upper_gamma_impl(T a, T x, const Accuracy& acc);

// Positive integer a with b - a > 0: substituting u = 1 + t in the Laplace
// representation gives a finite sum of upper incomplete gamma functions,
//   U(a, b, z) = e^z / Γ(a) Σ_j C(a-1, j) (-1)^{a-1-j} z^{-s_j} Γ(s_j, z),
// with s_j = j + b - a.
template <class T>
T tricomi_u_incomplete_gamma(int a, T b, T z, const Accuracy& acc) {
  using std::exp;
  using std::lgamma;
  using std::log;
  CompensatedSum<T> sum;
  T binom = 1;
  for (int j = 0; j < a; ++j) {
    if (j > 0) binom = binom * T(a - j) / T(j);
    const T s = T(j) + b - T(a);
    const T g = exp(z - s * log(z) + lgamma(s)) * reg_upper_gamma_impl(s, z, acc);
    sum.add(((a - 1 - j) % 2 == 0 ? binom : -binom) * g);
  }
  return sum.value() / exp(lgamma(T(a)));
}

// Laplace-integral representation for a > 0, evaluated by double-exponential
// quadrature. Defined in specfun.cpp.
double tricomi_u_integral(double a, double b, double z);

template <class T>
T tricomi_u_connection(T a, T b, T z, const Accuracy& acc);

}  // namespace detail

/// ln Γ(a) for a > 0.
template <class T>
T ln_gamma(T a) {
  using std::lgamma;
  if (!(a > 0)) throw DomainError("ln_gamma: argument must be positive");
  return lgamma(a);
}

/// Regularized lower incomplete gamma P(a, x) = γ(a, x) / Γ(a).
template <class T>
T reg_lower_gamma(T a, T x, const Accuracy& acc = {}) {
  using std::isinf;
  detail::check(acc);
  detail::check_gamma_args(a, x);
  if (x == 0) return 0;
  if (isinf(x)) return 1;
  if (x < a + 1) return detail::lower_gamma_series(a, x, acc);
  return 1 - detail::upper_gamma_fraction(a, x, acc);
}

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x) / Γ(a). Computed on
/// whichever side keeps full relative accuracy.
template <class T>
T reg_upper_gamma(T a, T x, const Accuracy& acc = {}) {
  detail::check(acc);
  detail::check_gamma_args(a, x);
  return detail::reg_upper_gamma_impl(a, x, acc);
}

template <class T>
T detail::reg_upper_gamma_impl(T a, T x, const Accuracy& acc) {
  using std::isinf;
  if (x == 0) return 1;
  if (isinf(x)) return 0;
  if (x < a + 1) return 1 - lower_gamma_series(a, x, acc);
  return upper_gamma_fraction(a, x, acc);
}

/// Confluent hypergeometric ₁F₁(a; b; z). Negative z goes through the Kummer
/// transformation M(a, b, z) = e^z M(b - a, b, -z).
template <class T>
T kummer_m(T a, T b, T z, const Accuracy& acc = {}) {
  using std::exp;
  detail::check(acc);
  if (detail::is_nonpositive_integer(b)) {
    throw DomainError("kummer_m: b must not be a nonpositive integer");
  }
  if (z == 0) return 1;
  if (z < 0) return exp(z) * detail::kummer_series(b - a, b, -z, acc);
  return detail::kummer_series(a, b, z, acc);
}

/// ln M(a, b, z) for a, b > 0 and z >= 0, without overflow for large z.
template <class T>
T log_kummer_m(T a, T b, T z, const Accuracy& acc = {}) {
  using std::abs;
  using std::lgamma;
  using std::log;
  detail::check(acc);
  if (!(a > 0 && b > 0 && z >= 0)) {
    throw DomainError("log_kummer_m: requires a > 0, b > 0, z >= 0");
  }
  if (z == 0) return 0;
  const T tol = detail::tolerance<T>(acc);

  // Large z: M ~ Γ(b)/Γ(a) e^z z^{a-b} Σ (b-a)_n (1-a)_n / (n! z^n). The
  // discarded companion term is O(e^{-z} z^{b-2a}) relative.
  if (z > 4 * (abs(b - a) + 1) * (abs(1 - a) + 1) && z - abs(b - 2 * a) * log(z) > 90) {
    detail::CompensatedSum<T> sum;
    sum.add(1);
    T term = 1;
    bool ok = false;
    for (int n = 0; n < acc.max_terms; ++n) {
      const T next = term * (b - a + n) * (1 - a + n) / (T(n + 1) * z);
      if (next == 0) {
        ok = true;
        break;
      }
      if (abs(next) > abs(term)) break;
      term = next;
      sum.add(term);
      if (abs(term) <= tol * abs(sum.value())) {
        ok = true;
        break;
      }
    }
    if (ok && sum.value() > 0) {
      return lgamma(b) - lgamma(a) + z + (a - b) * log(z) + log(sum.value());
    }
  }

  // Positive-term series with periodic rescaling.
  const T big = T(1e100);
  const T log_big = log(big);
  T log_scale = 0;
  detail::CompensatedSum<T> sum;
  sum.add(1);
  T term = 1;
  for (int n = 0; n < acc.max_terms; ++n) {
    const T ratio = (a + n) / (b + n) * z / (n + 1);
    term *= ratio;
    sum.add(term);
    if (term > big) {
      sum.scale(1 / big);
      term /= big;
      log_scale += log_big;
    }
    if (ratio < 1 && term <= tol * sum.value()) return log_scale + log(sum.value());
  }
  throw NonConvergence("log_kummer_m: series did not converge within max_terms");
}

/// Tricomi confluent hypergeometric U(a, b, z), z > 0.
///
/// Exact terminating forms are used when a or a - b + 1 is a nonpositive
/// integer. Otherwise the Kummer transformation U(a,b,z) = z^{1-b}
/// U(a-b+1, 2-b, z) brings the first parameter positive, after which large z
/// uses the asymptotic series, integer a uses a finite incomplete-gamma sum
/// and the rest use quadrature of the Laplace integral. When both a and
/// a - b + 1 are negative non-integers the M-connection formula is used for
/// z <= 10 only.
template <class T>
T tricomi_u(T a, T b, T z, const Accuracy& acc = {}) {
  using std::pow;
  detail::check(acc);
  if constexpr (std::is_same_v<T, double>) {
    // The incomplete-gamma sum alternates; evaluate in extended precision.
    return static_cast<double>(tricomi_u<quad>(quad(a), quad(b), quad(z), kExtended));
  } else {
    if (!(z > 0)) throw DomainError("tricomi_u: z must be positive");
    if (detail::is_nonpositive_integer(a)) {
      return detail::tricomi_u_polynomial(-detail::to_int(a), b, z);
    }
    const T a2 = a - b + 1;
    if (detail::is_nonpositive_integer(a2)) {
      return pow(z, 1 - b) * detail::tricomi_u_polynomial(-detail::to_int(a2), 2 - b, z);
    }
    if (!(a > 0) && a2 > 0) return pow(z, 1 - b) * tricomi_u(a2, 2 - b, z, acc);
    if (a > 0) {
      if (z >= 80) {
        T out;
        if (detail::tricomi_u_asymptotic(a, b, z, acc, out)) return out;
      }
      if (detail::is_integer(a) && b - a > 0) {
        return detail::tricomi_u_incomplete_gamma(detail::to_int(a), b, z, acc);
      }
      return T(detail::tricomi_u_integral(static_cast<double>(a), static_cast<double>(b),
                                          static_cast<double>(z)));
    }
    if (z > 10) {
      throw UnsupportedParameters(
          "tricomi_u: a and a-b+1 both negative non-integers with z > 10");
    }
    if (detail::is_integer(b)) {
      // Γ(1-b) and Γ(b-1) have poles; average symmetric shifts.
      const T shift = T(1e-6);
      return (detail::tricomi_u_connection(a, b + shift, z, acc) +
              detail::tricomi_u_connection(a, b - shift, z, acc)) /
             2;
    }
    return detail::tricomi_u_connection(a, b, z, acc);
  }
}

template <class T>
T detail::tricomi_u_connection(T a, T b, T z, const Accuracy& acc) {
  using std::pow;
  using std::tgamma;
  const T first = tgamma(1 - b) / tgamma(a - b + 1) * kummer_m(a, b, z, acc);
  const T second = tgamma(b - 1) / tgamma(a) * pow(z, 1 - b) * kummer_m(a - b + 1, 2 - b, z, acc);
  return first + second;
}

/// e^{z/2} W_{κ,μ}(z) = z^{μ+1/2} U(μ - κ + 1/2, 1 + 2μ, z).
template <class T>
T whittaker_w_scaled(T kappa, T mu, T z, const Accuracy& acc = {}) {
  using std::pow;
  if (!(z > 0)) throw DomainError("whittaker_w: z must be positive");
  return pow(z, mu + T(0.5)) * tricomi_u(mu - kappa + T(0.5), 1 + 2 * mu, z, acc);
}

/// Whittaker W_{κ,μ}(z), z > 0.
template <class T>
T whittaker_w(T kappa, T mu, T z, const Accuracy& acc = {}) {
  using std::exp;
  return exp(-z / 2) * whittaker_w_scaled(kappa, mu, z, acc);
}

/// Beta function B(a, b).
template <class T>
T beta_fn(T a, T b) {
  using std::exp;
  if (!(a > 0 && b > 0)) throw DomainError("beta_fn: arguments must be positive");
  return exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
}

/// All vectors (k_1, ..., k_parts) of nonnegative integers summing to
/// `total`, in reverse lexicographic order starting at (total, 0, ..., 0).
class Compositions {
 public:
  class iterator {
   public:
    using value_type = std::vector<int>;
    using difference_type = std::ptrdiff_t;
    using reference = const std::vector<int>&;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(int total, int parts) : current_(static_cast<std::size_t>(parts), 0) {
      current_[0] = total;
    }

    reference operator*() const { return current_; }
    const std::vector<int>* operator->() const { return &current_; }

    iterator& operator++() {
      const std::size_t last = current_.size() - 1;
      const int tail = current_[last];
      current_[last] = 0;
      for (std::size_t i = last; i-- > 0;) {
        if (current_[i] > 0) {
          --current_[i];
          current_[i + 1] = tail + 1;
          return *this;
        }
      }
      done_ = true;
      return *this;
    }
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.done_; }

   private:
    std::vector<int> current_;
    bool done_ = false;
  };

  Compositions(int total, int parts) : total_(total), parts_(parts) {
    if (parts < 1) throw DomainError("compositions: parts must be >= 1");
    if (total < 0) throw DomainError("compositions: total must be >= 0");
  }

  iterator begin() const { return iterator(total_, parts_); }
  std::default_sentinel_t end() const { return {}; }

  /// C(total + parts - 1, parts - 1).
  std::uint64_t size() const {
    std::uint64_t r = 1;
    for (int i = 1; i < parts_; ++i) {
      r = r * static_cast<std::uint64_t>(total_ + i) / static_cast<std::uint64_t>(i);
    }
    return r;
  }

 private:
  int total_;
  int parts_;
};

inline Compositions compositions(int total, int parts) { return {total, parts}; }

}  // namespace fdrs::specfun
