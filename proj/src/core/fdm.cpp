#include "core/fdm.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace blowup {

namespace {

constexpr double kOverflowGuard = 1e6;

double pow_q(double u, double q) {
  if (q == 2.0) return u * u;
  if (q == 3.0) return u * u * u;
  return std::pow(u, q);
}

// Share of the length-h dual cell centered at x that lies inside [a, b].
double cell_fraction(double x, double h, double a, double b) {
  const double lo = std::max(x - 0.5 * h, a);
  const double hi = std::min(x + 0.5 * h, b);
  return std::max(hi - lo, 0.0) / h;
}

double map_fraction(double frac, double coeff) {
  if (coeff == 0.5) return frac;
  if (coeff == 0.0) return frac >= 1.0 - 1e-12 ? 1.0 : 0.0;
  return frac > 1e-12 ? 1.0 : 0.0;
}

// Half-open membership x in [a, b) with slack for accumulated grid rounding.
double half_open_weight(double x, double a, double b) {
  const double tol = 1e-9;
  return (x >= a - tol && x < b - tol) ? 1.0 : 0.0;
}

// Trapezoid end weight along one axis.
double axis_weight(int i, int m) { return (i == 0 || i == m - 1) ? 0.5 : 1.0; }

class Stepper {
 public:
  explicit Stepper(const SolverConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    dim_ = cfg_.domain.dim;
    lo_ = cfg_.domain.box_lo();
    for (int a = 0; a < dim_; ++a) {
      m_[a] = static_cast<int>(std::lround(cfg_.domain.sides[a] / cfg_.h)) + 1;
      p_[a] = m_[a] + 2;
    }
    if (dim_ == 2) {
      m_[2] = 1;
      p_[2] = 1;
      st_[0] = p_[1];
      st_[1] = 1;
      st_[2] = 0;
    } else {
      st_[0] = static_cast<std::ptrdiff_t>(p_[1]) * p_[2];
      st_[1] = p_[2];
      st_[2] = 1;
    }
    const std::size_t padded =
        static_cast<std::size_t>(p_[0]) * p_[1] * (dim_ == 3 ? p_[2] : 1);
    cur_.assign(padded, 0.0);
    nxt_.assign(padded, 0.0);
    lam_ = cfg_.k / (cfg_.h * cfg_.h);
    build_flux_face();
    if (cfg_.source) {
      src_.assign(padded, 0.0);
      for_each_node([&](const std::array<int, 3>& c, std::size_t id) {
        src_[id] = cfg_.source(node_point(c));
      });
    }
    init_field();
  }

  void load(const GridState& s) {
    if (s.dim != dim_ || s.npts[0] != m_[0] || s.npts[1] != m_[1] ||
        (dim_ == 3 && s.npts[2] != m_[2]))
      fail(ErrorKind::invalid_argument, "grid state does not match the config grid");
    std::size_t at = 0;
    for_each_node([&](const std::array<int, 3>&, std::size_t id) {
      cur_[id] = s.u[at++];
    });
    t_ = s.t;
    step_index_ = s.step_index;
    refresh_extrema();
  }

  GridState snapshot() const {
    GridState s;
    s.t = t_;
    s.step_index = step_index_;
    s.dim = dim_;
    s.npts = {m_[0], m_[1], dim_ == 3 ? m_[2] : 1};
    s.u.reserve(static_cast<std::size_t>(m_[0]) * m_[1] * (dim_ == 3 ? m_[2] : 1));
    for_each_node([&](const std::array<int, 3>&, std::size_t id) {
      s.u.push_back(cur_[id]);
    });
    return s;
  }

  void advance() {
    fill_ghosts();
    double mx = -std::numeric_limits<double>::infinity();
    double mn = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    const double* c = cur_.data();
    double* nx = nxt_.data();
    const bool has_src = !src_.empty();
    if (dim_ == 2) {
      const std::ptrdiff_t s0 = st_[0];
      for (int i = 0; i < m_[0]; ++i) {
        const std::size_t base = static_cast<std::size_t>(i + 1) * s0 + 1;
        for (int j = 0; j < m_[1]; ++j) {
          const std::size_t id = base + j;
          double v = c[id] + lam_ * (c[id - 1] + c[id + 1] + c[id - s0] +
                                     c[id + s0] - 4.0 * c[id]);
          if (has_src) v += cfg_.k * src_[id];
          nx[id] = v;
          mx = std::max(mx, v);
          mn = std::min(mn, v);
          sum += v;
        }
      }
    } else {
      const std::ptrdiff_t s0 = st_[0], s1 = st_[1];
      for (int i = 0; i < m_[0]; ++i)
        for (int j = 0; j < m_[1]; ++j) {
          const std::size_t base =
              static_cast<std::size_t>(i + 1) * s0 + static_cast<std::size_t>(j + 1) * s1 + 1;
          for (int l = 0; l < m_[2]; ++l) {
            const std::size_t id = base + l;
            double v = c[id] + lam_ * (c[id - 1] + c[id + 1] + c[id - s1] +
                                       c[id + s1] + c[id - s0] + c[id + s0] -
                                       6.0 * c[id]);
            if (has_src) v += cfg_.k * src_[id];
            nx[id] = v;
            mx = std::max(mx, v);
            mn = std::min(mn, v);
            sum += v;
          }
        }
    }
    cur_.swap(nxt_);
    ++step_index_;
    t_ = static_cast<double>(step_index_) * cfg_.k;
    max_ = mx;
    min_ = mn;
    if (!std::isfinite(sum))
      fail(ErrorKind::solver_fault,
           "non-finite field value at step " + std::to_string(step_index_));
  }

  double t() const { return t_; }
  long long step_index() const { return step_index_; }
  double max_value() const { return max_; }
  double min_value() const { return min_; }
  double at(std::size_t padded_id) const { return cur_[padded_id]; }

  double mass() const {
    double s = 0.0;
    for_each_node([&](const std::array<int, 3>& c, std::size_t id) {
      double w = axis_weight(c[0], m_[0]) * axis_weight(c[1], m_[1]);
      if (dim_ == 3) w *= axis_weight(c[2], m_[2]);
      s += w * cur_[id];
    });
    return s * std::pow(cfg_.h, dim_);
  }

  // G(t) = int_Gamma1 u^q dS with face trapezoid weights and the dual-cell
  // flux shares; d(mass)/dt equals exactly k G at each forward-Euler step.
  double boundary_flux_functional() const {
    double s = 0.0;
    for (const FluxNode& f : flux_nodes_)
      s += f.weight * f.eta * pow_q(cur_[f.id], cfg_.q);
    return s;
  }

  double boundary_max() const {
    double mx = -std::numeric_limits<double>::infinity();
    for_each_node([&](const std::array<int, 3>& c, std::size_t id) {
      bool on_bdry = false;
      for (int a = 0; a < dim_; ++a)
        if (c[a] == 0 || c[a] == m_[a] - 1) on_bdry = true;
      if (on_bdry) mx = std::max(mx, cur_[id]);
    });
    return mx;
  }

  double discrete_gamma1_measure() const {
    double s = 0.0;
    for (const FluxNode& f : flux_nodes_) s += f.weight * f.eta;
    return s;
  }

  // Sum over all faces of w_face * fn(node point, face normal) * u(node);
  // corner nodes contribute once per adjoining face.
  double boundary_functional(
      const std::function<double(const Pt&, const Pt&)>& fn) const {
    double s = 0.0;
    for (int f = 0; f < 2 * dim_; ++f) {
      const int a = f / 2;
      const bool low = (f % 2 == 0);
      Pt nv = {0.0, 0.0, 0.0};
      nv[a] = low ? -1.0 : 1.0;
      for_each_face_node(a, low, [&](const std::array<int, 3>& c, std::size_t id) {
        double w = 1.0;
        for (int b = 0; b < dim_; ++b)
          if (b != a) w *= axis_weight(c[b], m_[b]);
        s += w * fn(node_point(c), nv) * cur_[id];
      });
    }
    return s * std::pow(cfg_.h, dim_ - 1);
  }

  // Gamma1 functional int_Gamma1 g(y) u^q dS with the flux shares.
  double gamma1_functional(const std::function<double(const Pt&)>& g) const {
    double s = 0.0;
    for (const FluxNode& f : flux_nodes_)
      s += f.weight * f.eta * g(f.x) * pow_q(cur_[f.id], cfg_.q);
    return s;
  }

  // Volume functional int g(y) u dy with trapezoid weights.
  double volume_functional(const std::function<double(const Pt&)>& g) const {
    double s = 0.0;
    for_each_node([&](const std::array<int, 3>& c, std::size_t id) {
      double w = axis_weight(c[0], m_[0]) * axis_weight(c[1], m_[1]);
      if (dim_ == 3) w *= axis_weight(c[2], m_[2]);
      s += w * g(node_point(c)) * cur_[id];
    });
    return s * std::pow(cfg_.h, dim_);
  }

  Pt node_point(const std::array<int, 3>& c) const {
    Pt x = {lo_[0] + c[0] * cfg_.h, lo_[1] + c[1] * cfg_.h, 0.0};
    if (dim_ == 3) x[2] = lo_[2] + c[2] * cfg_.h;
    return x;
  }

  template <class F>
  void for_each_node(F&& fn) const {
    std::array<int, 3> c = {0, 0, 0};
    for (c[0] = 0; c[0] < m_[0]; ++c[0])
      for (c[1] = 0; c[1] < m_[1]; ++c[1]) {
        if (dim_ == 2) {
          fn(c, offset(c));
        } else {
          for (c[2] = 0; c[2] < m_[2]; ++c[2]) fn(c, offset(c));
        }
      }
  }

 private:
  struct FluxNode {
    std::size_t id = 0;
    double eta = 0.0;     // flux share of the dual cell inside Gamma1
    double weight = 0.0;  // face trapezoid weight (h^{dim-1} included)
    Pt x = {0.0, 0.0, 0.0};
  };

  std::size_t offset(const std::array<int, 3>& c) const {
    std::size_t id = static_cast<std::size_t>(c[0] + 1) * st_[0] +
                     static_cast<std::size_t>(c[1] + 1) * st_[1];
    if (dim_ == 3) id += static_cast<std::size_t>(c[2] + 1);
    return id;
  }

  template <class F>
  void for_each_face_node(int axis, bool low, F&& fn) const {
    std::array<int, 3> c = {0, 0, 0};
    c[axis] = low ? 0 : m_[axis] - 1;
    int t1 = -1, t2 = -1;
    for (int b = 0; b < dim_; ++b)
      if (b != axis) (t1 < 0 ? t1 : t2) = b;
    for (c[t1] = 0; c[t1] < m_[t1]; ++c[t1]) {
      if (t2 < 0) {
        fn(c, offset(c));
      } else {
        for (c[t2] = 0; c[t2] < m_[t2]; ++c[t2]) fn(c, offset(c));
      }
    }
  }

  void build_flux_face() {
    if (cfg_.part.empty()) return;
    const int f = cfg_.part.face;
    const int a = f / 2;
    const bool low = (f % 2 == 0);
    flux_axis_ = a;
    flux_low_ = low;
    // Patch extent per tangential axis, centered on the face.
    const double half =
        (dim_ == 2 ? cfg_.part.gamma1_measure : std::sqrt(cfg_.part.gamma1_measure)) / 2.0;
    for_each_face_node(a, low, [&](const std::array<int, 3>& c, std::size_t id) {
      const Pt x = node_point(c);
      double eta = 1.0;
      double w = 1.0;
      for (int b = 0; b < dim_; ++b) {
        if (b == a) continue;
        const double lo1 = cfg_.domain.center[b] - half;
        const double hi1 = cfg_.domain.center[b] + half;
        eta *= cfg_.patch_rule == PatchRule::node_block
                   ? half_open_weight(x[b], lo1, hi1)
                   : map_fraction(cell_fraction(x[b], cfg_.h, lo1, hi1),
                                  cfg_.interface_coeff);
        w *= axis_weight(c[b], m_[b]);
      }
      if (eta > 0.0)
        flux_nodes_.push_back({id, eta, w * std::pow(cfg_.h, dim_ - 1), x});
    });
  }

  void init_field() {
    for_each_node([&](const std::array<int, 3>& c, std::size_t id) {
      const double v = cfg_.u0 ? cfg_.u0(node_point(c)) : cfg_.u0_value;
      if (!(v >= 0.0))
        fail(ErrorKind::invalid_argument, "initial data must be nonnegative");
      cur_[id] = v;
    });
    t_ = 0.0;
    step_index_ = 0;
    refresh_extrema();
  }

  void refresh_extrema() {
    double mx = -std::numeric_limits<double>::infinity();
    double mn = std::numeric_limits<double>::infinity();
    for_each_node([&](const std::array<int, 3>&, std::size_t id) {
      mx = std::max(mx, cur_[id]);
      mn = std::min(mn, cur_[id]);
    });
    max_ = mx;
    min_ = mn;
  }

  // Ghost values one layer outside each face: mirror of the first interior
  // node, plus 2h * flux on the patch face.  Domain edges and corners carry
  // no flux (their one-sided shares are zero since the patch sits strictly
  // inside its face), so the double mirror arises by composition.
  void fill_ghosts() {
    const double two_h = 2.0 * cfg_.h;
    for (int f = 0; f < 2 * dim_; ++f) {
      const int a = f / 2;
      const bool low = (f % 2 == 0);
      const std::ptrdiff_t d = (low ? -1 : +1) * st_[a];
      const bool is_flux = !flux_nodes_.empty() && a == flux_axis_ && low == flux_low_;
      for_each_face_node(a, low, [&](const std::array<int, 3>&, std::size_t id) {
        cur_[id + d] = cur_[id - d];
      });
      if (is_flux) {
        for (const FluxNode& fnode : flux_nodes_)
          cur_[fnode.id + d] += two_h * fnode.eta * pow_q(cur_[fnode.id], cfg_.q);
      }
    }
  }

  SolverConfig cfg_;
  int dim_ = 2;
  Pt lo_ = {0.0, 0.0, 0.0};
  int m_[3] = {1, 1, 1};
  int p_[3] = {3, 3, 3};
  std::ptrdiff_t st_[3] = {0, 0, 0};
  double lam_ = 0.0;
  double t_ = 0.0;
  long long step_index_ = 0;
  double max_ = 0.0, min_ = 0.0;
  std::vector<double> cur_, nxt_, src_;
  std::vector<FluxNode> flux_nodes_;
  int flux_axis_ = -1;
  bool flux_low_ = true;
};

}  // namespace

void SolverConfig::validate() const {
  if (domain.kind != DomainKind::rectangle && domain.kind != DomainKind::box)
    fail(ErrorKind::unsupported,
         "finite differences support rectangle and box domains only");
  if (!(q > 1.0)) fail(ErrorKind::config, "q must exceed 1");
  if (!(h > 0.0)) fail(ErrorKind::config, "h must be positive");
  if (!(k > 0.0)) fail(ErrorKind::config, "k must be positive");
  if (!(threshold > 0.0)) fail(ErrorKind::config, "threshold must be positive");
  if (!(t_max > 0.0)) fail(ErrorKind::config, "t_max must be positive");
  if (!(u0_value >= 0.0) && !u0)
    fail(ErrorKind::config, "initial data must be nonnegative");
  if (interface_coeff != 0.0 && interface_coeff != 0.5 && interface_coeff != 1.0)
    fail(ErrorKind::config, "interface flux weight must be 0, 0.5, or 1");
  const double cfl = h * h / (2.0 * domain.dim);
  if (k > cfl * (1.0 + 1e-12))
    fail(ErrorKind::cfl, "time step violates k <= h^2/(2 dim)");
  for (int a = 0; a < domain.dim; ++a) {
    const double cells = domain.sides[a] / h;
    if (std::abs(cells - std::lround(cells)) > 1e-9)
      fail(ErrorKind::config, "h must divide every side length");
  }
}

GridState make_initial_state(const SolverConfig& cfg) {
  return Stepper(cfg).snapshot();
}

GridState step(const GridState& s, const SolverConfig& cfg) {
  Stepper st(cfg);
  st.load(s);
  st.advance();
  return st.snapshot();
}

ThresholdReport run_until_threshold(const SolverConfig& cfg,
                                    const RunOptions& opt) {
  Stepper st(cfg);
  ThresholdReport rep;
  rep.min_over_run = st.min_value();

  long long stride = opt.series_stride > 0 ? opt.series_stride : 1;
  const bool auto_stride = opt.series_stride <= 0;
  auto record_sample = [&]() {
    rep.series.push_back({st.t(), st.max_value(), st.min_value(), st.boundary_max()});
  };
  record_sample();

  std::vector<double> times = opt.balance_times;
  std::sort(times.begin(), times.end());
  const bool track_balance = !times.empty();
  std::size_t next_time = 0;
  double flux_acc = 0.0;
  double g_prev = track_balance ? st.boundary_flux_functional() : 0.0;
  while (next_time < times.size() && times[next_time] <= 1e-12) {
    rep.balance.push_back({0.0, st.mass(), 0.0});
    ++next_time;
  }

  double prev_max = st.max_value();
  double prev_min = st.min_value();
  if (prev_max >= cfg.threshold) {
    rep.crossed = true;
    rep.T0 = 0.0;
    rep.m1_at_T0 = prev_min;
  }
  while (!rep.crossed && st.t() < cfg.t_max - 1e-12) {
    st.advance();
    const double mx = st.max_value(), mn = st.min_value();
    rep.min_over_run = std::min(rep.min_over_run, mn);
    if (track_balance) {
      const double g_now = st.boundary_flux_functional();
      flux_acc += cfg.k * 0.5 * (g_prev + g_now);
      g_prev = g_now;
      while (next_time < times.size() && st.t() >= times[next_time] - 1e-12) {
        rep.balance.push_back({st.t(), st.mass(), flux_acc});
        ++next_time;
      }
    }
    if (mx >= cfg.threshold) {
      const double theta = (cfg.threshold - prev_max) / (mx - prev_max);
      rep.crossed = true;
      rep.T0 = (st.t() - cfg.k) + theta * cfg.k;
      rep.m1_at_T0 = prev_min + theta * (mn - prev_min);
      break;
    }
    if (mx > kOverflowGuard) {
      rep.overflowed = true;
      break;
    }
    prev_max = mx;
    prev_min = mn;
    if (st.step_index() % stride == 0) {
      record_sample();
      if (auto_stride && rep.series.size() >= 8192) {
        std::vector<SeriesSample> kept;
        kept.reserve(rep.series.size() / 2 + 1);
        for (std::size_t i = 0; i < rep.series.size(); i += 2)
          kept.push_back(rep.series[i]);
        rep.series.swap(kept);
        stride *= 2;
      }
    }
  }
  record_sample();
  rep.t_end = st.t();
  rep.M1_end = st.max_value();
  rep.m1_end = st.min_value();
  rep.steps = st.step_index();
  return rep;
}

std::vector<double> mass_balance_residuals(
    const std::vector<BalanceSample>& samples) {
  std::vector<double> out;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double dm = samples[i].mass - samples[i - 1].mass;
    const double df = samples[i].flux_integral - samples[i - 1].flux_integral;
    out.push_back((dm - df) / samples[i].mass);
  }
  return out;
}

double weak_form_residual(const SolverConfig& cfg, const TestFunction& phi,
                          double t_end) {
  if (!(t_end > 0.0)) fail(ErrorKind::invalid_argument, "t_end must be positive");
  Stepper st(cfg);
  const long long steps = std::llround(t_end / cfg.k);
  if (steps < 1) fail(ErrorKind::invalid_argument, "t_end shorter than one step");

  auto interior_term = [&]() {
    return st.volume_functional([&](const Pt& y) {
      return phi.dt(y, st.t()) + phi.laplacian(y, st.t());
    });
  };
  auto flux_term = [&]() {
    return st.gamma1_functional([&](const Pt& y) { return phi.value(y, st.t()); });
  };
  auto normal_term = [&]() {
    return st.boundary_functional([&](const Pt& y, const Pt& nv) {
      return phi.normal_derivative(y, st.t(), nv);
    });
  };

  const double phi_u_start =
      st.volume_functional([&](const Pt& y) { return phi.value(y, 0.0); });
  double ia = interior_term(), ib = flux_term(), ic = normal_term();
  double sa = 0.5 * ia, sb = 0.5 * ib, sc = 0.5 * ic;
  for (long long s = 0; s < steps; ++s) {
    st.advance();
    ia = interior_term();
    ib = flux_term();
    ic = normal_term();
    sa += ia;
    sb += ib;
    sc += ic;
  }
  sa -= 0.5 * ia;
  sb -= 0.5 * ib;
  sc -= 0.5 * ic;
  const double te = st.t();
  const double phi_u_end =
      st.volume_functional([&](const Pt& y) { return phi.value(y, te); });
  const double lhs = cfg.k * sa;
  const double rhs = (phi_u_end - phi_u_start) - cfg.k * sb + cfg.k * sc;
  return std::abs(lhs - rhs);
}

DominanceVerdict compare_runs(const SolverConfig& a, const SolverConfig& b,
                              double t_end) {
  if (a.domain.kind != b.domain.kind || a.domain.dim != b.domain.dim ||
      a.h != b.h || a.k != b.k)
    fail(ErrorKind::invalid_argument,
         "comparison requires identical grids and time steps");
  for (int ax = 0; ax < a.domain.dim; ++ax)
    if (a.domain.sides[ax] != b.domain.sides[ax])
      fail(ErrorKind::invalid_argument,
           "comparison requires identical grids and time steps");
  Stepper sa(a), sb(b);
  DominanceVerdict v;
  const long long steps = std::llround(t_end / a.k);
  for (long long s = 0; s <= steps; ++s) {
    std::size_t flat = 0;
    sa.for_each_node([&](const std::array<int, 3>&, std::size_t id) {
      if (v.holds && sa.at(id) < sb.at(id) - 1e-12) {
        v.holds = false;
        v.step = s;
        v.node = flat;
        v.value_a = sa.at(id);
        v.value_b = sb.at(id);
        v.t_end = sa.t();
      }
      ++flat;
    });
    if (!v.holds) return v;
    if (s < steps) {
      sa.advance();
      sb.advance();
    }
  }
  v.t_end = sa.t();
  return v;
}

}  // namespace blowup
