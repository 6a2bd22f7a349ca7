// One PASS/FAIL line per acceptance criterion.  Usage:
//   acceptance              all criteria
//   acceptance --criterion N
// Exit status 0 iff every selected criterion passed.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "grasslog/grasslog.hpp"
#include "oracles.hpp"

using namespace grasslog;
using mp::Complex;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const Real& r) { return r.to_string(4); }

Real ten_to(int k, Bits bits) { return oracle::power_of_ten(k, bits); }

Outcome simplicial() {
  const auto t0 = Clock::now();
  const std::vector<std::pair<int, int>> cases{{1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}, {2, 3},
                                               {3, 0}, {3, 1}, {3, 2}, {3, 3}};
  std::size_t failures = 0, trials = 0;
  for (auto [m, n] : cases) {
    SuiteOptions o;
    o.m = m;
    o.n = n;
    o.trials = 1000;
    o.seed = 1;
    auto r = suite_simplicial(o);
    trials += r.trials;
    failures += std::stoul(r.max_residual);
  }
  const double s = seconds_since(t0);
  std::ostringstream d;
  d << trials << " configurations over " << cases.size() << " (m,n) cases, " << failures << " failures, " << s << " s";
  return {failures == 0 && s < 30.0, d.str()};
}

Outcome sign_decomposition() {
  SuiteOptions o;
  o.m = 2;
  o.n = 3;
  o.trials = 200;
  auto r = suite_sign_decomposition(o);
  return {r.pass, "200 rational chains, m=2, degrees 1..3, failures " + r.max_residual};
}

Outcome homotopy() {
  SuiteOptions o;
  o.m = 2;
  o.n = 3;
  o.trials = 200;
  auto r = suite_homotopy(o);
  return {r.pass, "200 boundaries over Q^2, failures " + r.max_residual};
}

Outcome homology_parity() {
  const auto t0 = Clock::now();
  auto h2 = grassmann_homology(FieldDescriptor::prime(3), 2, 3);
  auto h1 = grassmann_homology(FieldDescriptor::prime(3), 1, 3);
  const double s = seconds_since(t0);
  std::ostringstream d;
  d << "F_3: cokernel rank " << h2.suslin_cokernel_rank << " (m=2), " << h1.suslin_cokernel_rank << " (m=1), "
    << s << " s";
  const bool ok = h2.boundary_squared_zero && h1.boundary_squared_zero && h2.suslin_cokernel_rank == 1 &&
                  h1.suslin_cokernel_rank == 0 && s < 120.0;
  return {ok, d.str()};
}

Outcome symbols() {
  SuiteOptions o;
  o.m = 2;
  o.trials = 50;
  auto r = suite_symbols(o);
  return {r.pass, "50 degree-3 chains over Q^2, nontrivial images " + r.max_residual};
}

Outcome volume() {
  std::ostringstream d;
  std::vector<int> eps;
  for (int m = 1; m <= 3; ++m) {
    const auto cal = volume_calibration(m);  // throws unless the pullback is +-target
    eps.push_back(cal.sign);
    d << "eps_" << m << "=" << (cal.sign > 0 ? "+1" : "-1") << " ";
  }
  d << "(required eps_1 = eps_2 = +1)";
  return {eps[0] == 1 && eps[1] == 1, d.str()};
}

Outcome five_term() {
  const auto t0 = Clock::now();
  const PrecisionPolicy p(50);
  auto r = verify_functional_equation(grassmann_d2(), 100, p, 1, 1);
  const double s = seconds_since(t0);
  const Real bound = ten_to(-40, p.working_bits());
  const bool ok = Real::from_string(r.max_residual, p.working_bits()) < bound && s < 60.0;
  std::ostringstream d;
  d << "100 points of G^2_2(C), max residual " << r.max_residual << ", " << s << " s";
  return {ok, d.str()};
}

Outcome skew() {
  const PrecisionPolicy p(50);
  auto r = verify_skew_symmetry(grassmann_d2(), 20, p, 1, 1);
  const bool ok = Real::from_string(r.max_residual, p.working_bits()) < ten_to(-40, p.working_bits());
  return {ok, "24 permutations on 20 configurations, max residual " + r.max_residual};
}

Outcome cocycle() {
  const PrecisionPolicy p(50);
  auto c = verify_cocycle(grassmann_d2(), 50, p, 1, 1);
  auto b = verify_base_change(grassmann_d2(), 50, p, 1, 1);
  const Real bound = ten_to(-40, p.working_bits());
  const bool ok = Real::from_string(c.max_residual, p.working_bits()) < bound &&
                  Real::from_string(b.max_residual, p.working_bits()) < bound;
  return {ok, "cocycle max " + c.max_residual + ", base change max " + b.max_residual + " over 50 samples"};
}

Outcome special_values() {
  PolylogContext ctx(PrecisionPolicy(50));
  const Bits bits = ctx.bits();
  const Real catalan = oracle::catalan_series(bits);
  const Real d_i = bw_d2(Complex(0, 1, bits), ctx);
  const Real theta = ctx.pi() * 2 / 3;
  const Real clausen = oracle::clausen2(theta, bits);
  const Real d_w = bw_d2(Complex::polar(Real(1, bits), theta), ctx);
  const Real e1 = oracle::abs_diff(d_i, catalan), e2 = oracle::abs_diff(d_w, clausen);
  const Real bound = ten_to(-40, bits);
  return {e1 < bound && e2 < bound, "|D2(i) - G| = " + fmt(e1) + ", |D2(w) - Cl2(2pi/3)| = " + fmt(e2)};
}

Outcome zeta() {
  auto r40 = zeta_demo(-3, PrecisionPolicy(40));
  auto r80 = zeta_demo(-3, PrecisionPolicy(80));
  const Bits bits = r80.residual.precision();
  const bool below = r40.residual < ten_to(-25, r40.residual.precision());
  // at least ten orders: r80 * 10^10 <= r40
  const bool shrinks = r80.residual.with_precision(bits) * ten_to(10, bits) <= r40.residual.with_precision(bits);
  return {below && shrinks, "residual " + fmt(r40.residual) + " at P=40, " + fmt(r80.residual) + " at P=80"};
}

Outcome monodromy() {
  PolylogContext ctx(PrecisionPolicy(50));
  const Bits bits = ctx.bits();
  std::ostringstream d;
  bool ok = true;
  for (int m = 2; m <= 3; ++m) {
    auto r = monodromy_loop(m, Complex(1, 0, bits), Real::from_double(0.5, bits), 64, ctx);
    ok = ok && r.residual < ten_to(-30, bits);
    d << "m=" << m << " residual " << fmt(r.residual) << (m == 2 ? ", " : "");
  }
  return {ok, d.str()};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> list{
      {"simplicial identities", simplicial},
      {"boundary commutes with alt", sign_decomposition},
      {"cone homotopy", homotopy},
      {"Grassmann homology parity over F_3", homology_parity},
      {"symbol map on boundaries", symbols},
      {"volume calibration", volume},
      {"five-term functional equation", five_term},
      {"skew symmetry", skew},
      {"cocycle and base change", cocycle},
      {"special values of D2", special_values},
      {"zeta(2) L(2, chi_-3) demo", zeta},
      {"single-valuedness around 1", monodromy},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  const auto& list = criteria();
  if (selected.empty())
    for (int k = 1; k <= static_cast<int>(list.size()); ++k) selected.push_back(k);

  bool all = true;
  for (int k : selected) {
    if (k < 1 || k > static_cast<int>(list.size())) {
      std::cerr << "no criterion " << k << "\n";
      return 2;
    }
    const auto& [name, run] = list[static_cast<std::size_t>(k - 1)];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << k << " " << name << ": " << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
