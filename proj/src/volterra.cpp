#include "toda/volterra.hpp"

#include <cmath>
#include <numeric>

namespace toda {

namespace {

int mod(long i, int n) {
  long r = i % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// Path expansion of the diagonal entry of L^n at one site: an up-step moves a
// sites with weight 1, a down-step at position p moves -b sites with weight
// -u(p). Returns the weights of all n-step walks indexed by net displacement
// (offset n*b).
template <class T, class U>
std::vector<T> walks(int a, int b, int n, U&& u_at) {
  const int width = n * (a + b) + 1;
  std::vector<T> cur(width, T(0)), next(width, T(0));
  cur[n * b] = T(1);
  for (int step = 0; step < n; ++step) {
    std::fill(next.begin(), next.end(), T(0));
    for (int d = 0; d < width; ++d) {
      if (cur[d] == T(0)) continue;
      if (d + a < width) next[d + a] += cur[d];
      if (d - b >= 0) next[d - b] -= cur[d] * u_at(d - n * b);
    }
    std::swap(cur, next);
  }
  return cur;
}

// Neumaier compensated sum.
struct CompensatedSum {
  Real sum = 0, c = 0;
  void add(Real x) {
    Real t = sum + x;
    if (std::abs(sum) >= std::abs(x)) c += (sum - t) + x;
    else c += (x - t) + sum;
    sum = t;
  }
  Real value() const { return sum + c; }
};

std::vector<Real> diagonal(const LatticeState& s, int n) {
  const int N = s.size();
  std::vector<Real> d(N);
  for (int j = 0; j < N; ++j) {
    auto w = walks<Real>(s.a, s.b, n, [&](int disp) { return s.u[mod(j + disp, N)]; });
    d[j] = w[n * s.b];
  }
  return d;
}

void check_finite(const std::vector<Real>& u, Real t) {
  for (Real x : u)
    if (!std::isfinite(x)) throw NonFinite("lattice state left the representable range at t = " + std::to_string(t));
}

}  // namespace

void LatticeState::validate() const {
  if (a < 1 || b < 1) throw std::invalid_argument("a and b must be positive");
  if (std::gcd(a, b) != 1) throw NonCoprime("a and b must be coprime");
  if (sign == -1 && a == b) throw InvalidTau("tau = -1 is excluded");
  if (u.empty() || size() % refinement() != 0)
    throw std::invalid_argument("site count must be a positive multiple of the refinement");
}

LatticeState make_state(int a, int b, int coarse_sites, const std::function<Real(int)>& f) {
  LatticeState s;
  s.a = a;
  s.b = b;
  if (coarse_sites < 1) throw std::invalid_argument("need at least one coarse site");
  s.u.resize(static_cast<std::size_t>(coarse_sites) * (a + b));
  for (int j = 0; j < s.size(); ++j) s.u[j] = f(j);
  s.validate();
  return s;
}

DiffOp<ShiftPoly> symbolic_lax(int a, int b, int sign) {
  using SOp = DiffOp<ShiftPoly>;
  if (sign > 0) {
    const Rational st = frac(1, a + b);
    return SOp::monomial(1, frac(a, a + b), st) - SOp::monomial(ShiftPoly::u(), frac(-b, a + b), st);
  }
  if (a <= b) throw std::invalid_argument("negative sign needs a > b");
  const Rational st = frac(1, a - b);
  return SOp::monomial(1, frac(a, a - b), st) - SOp::monomial(ShiftPoly::u(), frac(b, a - b), st);
}

ShiftPoly stencil_diagonal(int a, int b, int n) {
  const int m = a + b;
  auto w = walks<ShiftPoly>(a, b, n, [&](int disp) { return ShiftPoly::u(frac(disp, m)); });
  return w[n * b];
}

ShiftPoly stencil_flow(int a, int b, int k) {
  const ShiftPoly d = stencil_diagonal(a, b, k * (a + b));
  return ShiftPoly::u() * (d - d.shifted(frac(-b, a + b)));
}

ShiftPoly symbolic_flow_from_diagonal(int a, int b, int k) {
  const auto L = symbolic_lax(a, b);
  const ShiftPoly d = op_pow(L, k * (a + b)).at(0);
  return ShiftPoly::u() * (d - d.shifted(frac(-b, a + b)));
}

ShiftPoly symbolic_flow_from_commutator(int a, int b, int k) {
  const auto L = symbolic_lax(a, b);
  const auto B = op_pow(L, k * (a + b)).nonnegative_part();
  const auto C = commutator(B, L);
  // dL/dt = -(du/dt) Lambda^{-b/(a+b)}; every other coefficient must vanish
  for (const auto& [n, c] : C.coeffs())
    if (C.power_of(n) != frac(-b, a + b))
      throw std::logic_error("Lax equation leaves a term at power " + C.power_of(n).get_str());
  return -C.at_power(frac(-b, a + b));
}

std::vector<Real> flow_rhs(const LatticeState& s, int k) {
  if (s.sign < 0) throw UnsupportedFlow("flows are only simulated for positive tau");
  if (k < 1) throw std::invalid_argument("flow index must be positive");
  s.validate();
  const int N = s.size();
  const std::vector<Real> d = diagonal(s, k * (s.a + s.b));
  std::vector<Real> out(N);
  for (int j = 0; j < N; ++j) out[j] = s.u[j] * (d[j] - d[mod(j - s.b, N)]);
  return out;
}

Trajectory integrate(LatticeState s, int k, Real t_end, Real dt, int record_every) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  if (record_every < 1) throw std::invalid_argument("record_every must be positive");
  s.validate();
  const Real dir = t_end >= s.t ? 1.0 : -1.0;
  const long steps = std::lround(std::abs(t_end - s.t) / dt);
  const Real h = dir * dt;
  const int N = s.size();
  const Real t0 = s.t;
  Trajectory tr;
  tr.times.push_back(s.t);
  tr.states.push_back(s.u);
  LatticeState tmp = s;
  for (long step = 1; step <= steps; ++step) {
    auto stage = [&](const std::vector<Real>& base, const std::vector<Real>& kv, Real c) {
      for (int j = 0; j < N; ++j) tmp.u[j] = base[j] + c * kv[j];
      return flow_rhs(tmp, k);
    };
    const std::vector<Real> k1 = flow_rhs(s, k);
    const std::vector<Real> k2 = stage(s.u, k1, h / 2);
    const std::vector<Real> k3 = stage(s.u, k2, h / 2);
    const std::vector<Real> k4 = stage(s.u, k3, h);
    for (int j = 0; j < N; ++j) s.u[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    s.t = t0 + step * h;
    check_finite(s.u, s.t);
    if (step % record_every == 0 || step == steps) {
      tr.times.push_back(s.t);
      tr.states.push_back(s.u);
    }
  }
  return tr;
}

std::vector<Real> conserved_quantities(const LatticeState& s, int kmax) {
  if (kmax < 1) throw std::invalid_argument("kmax must be positive");
  s.validate();
  const int N = s.size();
  const int step = s.sign > 0 ? s.a + s.b : std::abs(s.a - s.b);
  // the negative-tau operator shifts by a and by b in the same direction
  const int down = s.sign > 0 ? s.b : -s.b;
  std::vector<Real> out;
  for (int k = 1; k <= kmax; ++k) {
    const int n = k * step;
    CompensatedSum total;
    for (int j = 0; j < N; ++j) {
      std::vector<Real> w;
      if (down > 0) {
        w = walks<Real>(s.a, s.b, n, [&](int disp) { return s.u[mod(j + disp, N)]; });
        for (int d = 0; d < static_cast<int>(w.size()); ++d)
          if (mod(d - n * s.b, N) == 0) total.add(w[d]);
      } else {
        // row j has 1 at column j + a and -u_j at column j + b
        std::vector<Real> cur(n * s.a + 1, 0.0), next(cur.size());
        cur[0] = 1;
        for (int st = 0; st < n; ++st) {
          std::fill(next.begin(), next.end(), 0.0);
          for (int d = 0; d < static_cast<int>(cur.size()); ++d) {
            if (cur[d] == 0) continue;
            if (d + s.a < static_cast<int>(next.size())) next[d + s.a] += cur[d];
            if (d + s.b < static_cast<int>(next.size())) next[d + s.b] -= cur[d] * s.u[mod(j + d, N)];
          }
          std::swap(cur, next);
        }
        for (int d = 0; d < static_cast<int>(cur.size()); ++d)
          if (mod(d, N) == 0) total.add(cur[d]);
      }
    }
    out.push_back(total.value());
  }
  return out;
}

DriftReport measure_drift(const LatticeState& s0, int k, Real t_end, Real dt, int kmax) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  LatticeState s = s0;
  s.validate();
  DriftReport rep;
  rep.H0 = conserved_quantities(s, kmax);
  const long steps = std::lround(std::abs(t_end - s.t) / dt);
  for (long i = 0; i < steps; ++i) {
    Trajectory tr = integrate(s, k, s.t + dt, dt, 1);
    s.u = tr.states.back();
    s.t = tr.times.back();
    const std::vector<Real> H = conserved_quantities(s, kmax);
    for (int q = 0; q < kmax; ++q)
      rep.max_drift = std::max(rep.max_drift, std::abs(H[q] - rep.H0[q]) / std::abs(rep.H0[q] + 1));
  }
  return rep;
}

bool StationarityReport::pass() const {
  if (!band_ok) return false;
  for (bool c : commutes)
    if (!c) return false;
  return true;
}

StationarityReport stationarity_check(int a, int b, int kmax) {
  if (!(a > b && b >= 1)) throw std::invalid_argument("stationarity needs a > b >= 1");
  if (std::gcd(a, b) != 1) throw NonCoprime("a and b must be coprime");
  StationarityReport rep;
  rep.a = a;
  rep.b = b;
  const auto L = symbolic_lax(a, b, -1);
  const auto P = op_pow(L, a - b);
  for (const auto& [n, c] : P.coeffs()) rep.band.push_back(P.power_of(n));
  rep.band_ok = !rep.band.empty();
  for (std::size_t i = 0; i < rep.band.size(); ++i) {
    const Rational& p = rep.band[i];
    if (p.get_den() != 1 || p < b || p > a) rep.band_ok = false;
    if (i > 0 && p - rep.band[i - 1] != 1) rep.band_ok = false;
  }
  if (rep.band.size() != static_cast<std::size_t>(a - b + 1)) rep.band_ok = false;
  for (int k = 1; k <= kmax; ++k) rep.commutes.push_back(commutator(op_pow(L, k * (a - b)), L).coeffs().empty());
  return rep;
}

DualityReport duality_check(const LatticeState& s, int k, Real tol) {
  s.validate();
  if (s.sign < 0) throw UnsupportedFlow("duality is checked for positive tau");
  if (s.b != 1)
    throw std::invalid_argument("duality map is local only from the (a,1) lattice; map the (b,1) state instead");
  DualityReport rep;
  rep.a = s.a;
  rep.b = s.b;
  const int N = s.size();
  // reflected product map u'_i = prod_{j<a} u_{-i-j} onto the (1,a) lattice
  auto site = [&](int i, int j) { return mod(-static_cast<long>(i) - j, N); };
  LatticeState d = s;
  std::swap(d.a, d.b);
  for (int i = 0; i < N; ++i) {
    Real p = 1;
    for (int j = 0; j < s.a; ++j) p *= s.u[site(i, j)];
    d.u[i] = p;
  }
  const Real sigma = (k * (s.a + 1)) % 2 ? 1.0 : -1.0;
  const std::vector<Real> F = flow_rhs(s, k), Fd = flow_rhs(d, k);
  Real scale = 1;
  for (Real f : Fd) scale = std::max(scale, std::abs(f));
  for (int i = 0; i < N; ++i) {
    Real push = 0;  // d u'_i / dt along the (a,1) flow
    for (int j = 0; j < s.a; ++j) {
      Real others = 1;
      for (int l = 0; l < s.a; ++l)
        if (l != j) others *= s.u[site(i, l)];
      push += others * F[site(i, j)];
    }
    rep.max_mismatch = std::max(rep.max_mismatch, std::abs(Fd[i] - sigma * push) / scale);
  }
  rep.relabeling = "u'_i = prod_{j<" + std::to_string(s.a) + "} u_{-i-j}, t -> " + (sigma > 0 ? "t" : "-t");
  rep.pass = rep.max_mismatch <= tol;
  return rep;
}

}  // namespace toda
