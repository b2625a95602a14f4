// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "oscillax/amplitude.hpp"
#include "oscillax/experiments.hpp"
#include "oscillax/reference_solver.hpp"
#include "oscillax/scenario.hpp"

namespace fs = std::filesystem;
using namespace oscillax;

namespace {

int failures = 0;

struct Outcome {
  bool pass;
  std::string detail;
};

void criterion(int k, const char* title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = o.pass && secs < limit_s;
  if (!pass) ++failures;
  std::printf("[%s] %2d %s: %s | %.1f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", k, title, o.detail.c_str(), secs,
              limit_s);
  std::fflush(stdout);
}

struct Tally {
  long rows = 0, bad = 0;
  double worst_ratio = 0;  // max lhs/rhs
};

Tally tally(const std::vector<BoundRow>& rows, const std::string& prefix = "") {
  Tally t;
  for (const auto& r : rows) {
    if (!prefix.empty() && r.check.rfind(prefix, 0) != 0) continue;
    ++t.rows;
    t.bad += !r.pass;
    if (r.rhs > 0) t.worst_ratio = std::max(t.worst_ratio, r.lhs / r.rhs);
  }
  return t;
}

std::string describe(const Tally& t) {
  std::ostringstream os;
  os << t.bad << " violations / " << t.rows << " rows, worst lhs/rhs " << t.worst_ratio;
  return os.str();
}

std::string read(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const std::string dir = OSCILLAX_SCENARIOS;
  const Scenario fixture = load_scenario(dir + "/symmetric-real-potential.ini");
  const Scenario phased = load_scenario(dir + "/complex-phase-potential.ini");
  const std::uint64_t seed = fixture.seed;
  const BandFunction u0 = fixture.u0(), V = fixture.V();
  const double d1 = fixture.delta1, d2 = fixture.delta2;

  criterion(1, "phi_n(0,w) quadrature vs closed form", 5, [] {
    auto rows = phi_zero_rows();
    double worst = 0;
    bool ok = true;
    for (const auto& r : rows) {
      worst = std::max(worst, r.lhs);
      ok = ok && r.pass;
    }
    std::ostringstream os;
    os << rows.size() << " (n,w) pairs, max |diff| " << worst << " (<= 1e-8)";
    return Outcome{ok && rows.size() == 16, os.str()};
  });

  criterion(2, "phi_n bound on 1000 random (n,delta,s,w)", 60, [&] {
    Tally t = tally(phi_bound_rows(seed, 1000));
    return Outcome{t.bad == 0 && t.rows == 1000, describe(t)};
  });

  criterion(3, "one-term, two-term and corollary remainder bounds, 1000 cases each", 600, [&] {
    auto rows = bounds4_rows(seed, 1000, d1, d2, fixture.tol);
    Tally a = tally(rows, "thm43"), b = tally(rows, "thm46"), c = tally(rows, "cor47");
    std::ostringstream os;
    os << "one-term " << a.bad << "/" << a.rows << ", two-term " << b.bad << "/" << b.rows << ", corollary "
       << c.bad << "/" << c.rows << " violations";
    return Outcome{a.bad + b.bad + c.bad == 0 && a.rows == 1000 && b.rows == 1000 && c.rows == 1000, os.str()};
  });

  criterion(4, "Chebyshev tail bound on 100 random cases, monotone in width", 60, [&] {
    auto rows = tail_rows(seed, 100);
    Tally t = tally(rows, "tail"), m = tally(rows, "tail_monotone");
    std::ostringstream os;
    os << describe(t) << "; width 2->16 decreasing steps " << (m.rows - m.bad) << "/" << m.rows;
    return Outcome{t.bad == 0 && m.rows == 3, os.str()};
  });

  criterion(5, "S1 decay slopes", 120, [&] {
    double mid = 0.5 * (u0.lo() + u0.hi());
    SlopeRow a = s1_slope(u0, mid, 1e2, 1e4, 9, -0.55, -0.45, fixture.tol);
    SlopeRow b = s1_slope(u0, u0.hi() + 1, 1, 1e2, 9, -INFINITY, -d1 + 0.05, 1e-13);
    std::ostringstream os;
    os << "midpoint xi=" << mid << " slope " << a.fit.slope << " (t in [1e2,1e4], want -0.5 +- 0.05); xi=p2+1 slope "
       << b.fit.slope << " (t in [1,1e2], want <= " << -d1 + 0.05 << ")";
    return Outcome{a.pass && b.pass, os.str()};
  });

  criterion(6, "S1 cone expansion on the fixture grid", 120, [&] {
    auto rows = s1_cone_rows(u0, fixture.effective_t_grid(), fixture.effective_xi_grid(), d1, fixture.tol);
    Tally c = tally(rows, "s1_cone"), l = tally(rows, "s1_linf");
    return Outcome{c.bad + l.bad == 0 && c.rows > 0, "expansion " + describe(c) + "; sup-norm " + describe(l)};
  });

  criterion(7, "uniform W and dW/dp bounds at t in {0.5,1,10,1e2,1e3}", 300, [&] {
    Tally t = tally(w_bound_rows(AmplitudeW{V, u0}, {0.5, 1, 10, 1e2, 1e3}, d2));
    return Outcome{t.bad == 0 && t.rows == 10, describe(t)};
  });

  criterion(8, "S2 cone estimates on the fixture grid", 600, [&] {
    auto ts = fixture.effective_t_grid(), xs = fixture.effective_xi_grid();
    auto rows = s2_cone_rows(AmplitudeW{V, u0}, ts, xs, d1, d2, fixture.tol);
    Tally c = tally(rows, "s2_cone"), l = tally(rows, "s2_linf");
    std::ostringstream os;
    os << ts.size() * xs.size() << " grid points; cone " << describe(c) << "; sup-norm " << describe(l);
    return Outcome{c.bad + l.bad == 0 && ts.size() * xs.size() <= 500, os.str()};
  });

  criterion(9, "decomposition W = W1 + W2/t at 100 random admissible (t,p)", 180, [&] {
    Tally t = tally(decomposition_rows(TildeV(V), u0, fixture.effective_eps(), seed, 100));
    return Outcome{t.bad == 0 && t.rows == 100, describe(t)};
  });

  criterion(10, "refined expansion: positivity intervals and S2 decay slope", 300, [&] {
    BandFunction pu = phased.u0(), pv = phased.V();
    TildeV tv(pv);
    auto rep = positivity_intervals(tv, pu, phased.effective_eps());
    std::ostringstream os;
    if (!rep.hypotheses_ok || rep.intervals.empty()) return Outcome{false, "positivity abstained: " + rep.reason};
    bool verified = true;
    os << "intervals";
    for (std::size_t i = 0; i < rep.intervals.size(); ++i) {
      os << " (" << rep.intervals[i].first << "," << rep.intervals[i].second << ")";
      verified = verified && rep.verified[i];
    }
    os << ", min sampled |W1| " << rep.min_abs_w1;
    SlopeRow s = s2_slope(AmplitudeW{pv, pu}, rep.best_p, 1e2, 1e4, 5, -0.57, -0.43, phased.tol);
    os << "; S2 slope along xi=" << rep.best_p << ": " << s.fit.slope << " (want -0.5 +- 0.07)";
    return Outcome{verified && s.pass, os.str()};
  });

  criterion(11, "Dyson truncation residual scaling at t=1 on 2^14 points", 300, [&] {
    SpectralGrid g = make_grid(u0, V, 1, 1 << 14, fixture.residual_dt);
    auto tab = dyson_residual(u0, V, g, 1, {0.0, 0.0125, 0.025, 0.05, 0.1});
    double free_rel = tab.rows[0].residual / tab.s1_peak;
    std::ostringstream os;
    os << "slope " << tab.slope << " (want [1.7,2.3]); free solver vs S1 relative " << free_rel << " (<= 1e-6)";
    return Outcome{tab.slope >= 1.7 && tab.slope <= 2.3 && free_rel <= 1e-6, os.str()};
  });

  criterion(12, "repeated propagate runs are byte-identical", 120, [&] {
    fs::path base = fs::temp_directory_path() / "oscillax_acceptance";
    fs::remove_all(base);
    for (const char* sub : {"a", "b"}) {
      std::string cmd = std::string(OSCILLAX_CLI) + " propagate --scenario " + dir +
                        "/complex-phase-potential.ini --out " + (base / sub).string() + " > /dev/null 2>&1";
      int st = std::system(cmd.c_str());
      if (!WIFEXITED(st) || WEXITSTATUS(st) != 0) return Outcome{false, "propagate exited with failure"};
    }
    int files = 0;
    for (const auto& e : fs::directory_iterator(base / "a")) {
      ++files;
      if (read(e.path()) != read(base / "b" / e.path().filename()))
        return Outcome{false, e.path().filename().string() + " differs"};
    }
    return Outcome{files >= 3, std::to_string(files) + " files identical"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
