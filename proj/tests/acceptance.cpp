#include "qsemi.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

using namespace qsemi;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

// x_a_i_j -> x_{ij}, x_b_i_j -> y_{ij}, products written by juxtaposition.
std::string display_form(std::string s)
{
  s = std::regex_replace(s, std::regex(R"(x_a_(\d)_(\d))"), "x_{$1$2}");
  s = std::regex_replace(s, std::regex(R"(x_b_(\d)_(\d))"), "y_{$1$2}");
  s.erase(std::remove(s.begin(), s.end(), '*'), s.end());
  return s;
}

Outcome example1()
{
  std::ostringstream out, err;
  const int code = cli::run({"gens", std::string(QSEMI_SAMPLES) + "/kronecker.json"}, out, err);
  if (code != 0) return {false, err.str()};
  std::vector<std::string> got;
  std::istringstream lines(out.str());
  for (std::string line; std::getline(lines, line);) got.push_back(display_form(line.substr(line.find(" = ") + 3)));
  const std::vector<std::string> want{"2x_{11}x_{22} - 2x_{12}x_{21}",
                                      "x_{11}y_{22} - x_{12}y_{21} - x_{21}y_{12} + x_{22}y_{11}",
                                      "2y_{11}y_{22} - 2y_{12}y_{21}"};
  std::string detail;
  for (const auto& g : got) detail += (detail.empty() ? "" : "; ") + g;
  return {got == want, detail};
}

Outcome suite(const std::string& name, VerifyOptions opt = {})
{
  const Report r = run_suite(name, opt);
  std::size_t ok = 0;
  for (const auto& it : r.items) ok += it.equal;
  return {r.pass(), std::to_string(ok) + "/" + std::to_string(r.items.size()) + " checks"};
}

Outcome example2()
{
  const BlockRouteSet got = associated_route_set({2, 3, 0, 4, 1, 5});
  const std::string s = route_set_str(got);
  return {s == "{(adj X12, X12), (adj X21, X23, adj X33, X31)}", s};
}

Outcome census()
{
  const auto n = enumerate_route_set_classes(2).size();
  return {n == 3, std::to_string(n) + " classes"};
}

Outcome invariance()
{
  std::size_t total = 0, ok = 0;
  for (const Quiver& q : {fixtures::kronecker(), fixtures::three_vertex()}) {
    const DimensionVector dims = uniform_dims(q, 2);
    const Representation generic = generic_representation(q, dims);
    Rng rng(derive_seed(default_seed, 77));
    const Representation sample = random_representation(q, dims, rng);
    const auto routes = enumerate_simple_routes(q);
    for (std::size_t i = 0; i < routes.size(); ++i) {
      const Route& r = routes[i].canonical;
      const Polynomial f = route_trace(r, generic);
      const std::uint64_t s = derive_seed(default_seed, i);
      ++total;
      if (check_semiinvariance(f, {}, sample, 20, s, GroupKind::SpecialLinear).pass() &&
          check_semiinvariance(f, route_weight(r, q), sample, 20, s ^ 1, GroupKind::GeneralLinear).pass())
        ++ok;
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " traces"};
}

Outcome membership()
{
  const Quiver q = fixtures::kronecker();
  const Representation generic = generic_representation(q, uniform_dims(q, 2));
  const auto gens = generator_routes(q);
  std::size_t total = 0, ok = 0;
  for (const auto& si : extract_semiinvariants(fixtures::kronecker_dz(), generic)) {
    ++total;
    const auto e = membership_in_trace_algebra(si.value, gens, generic);
    if (e && e->evaluate(generic) == si.value) ++ok;
  }
  return {gens.size() == 3 && ok == total, std::to_string(ok) + "/" + std::to_string(total) + " coefficients"};
}

Outcome counterexample()
{
  const CounterexampleReport c = counterexample_check();
  return {c.f_nonzero() && c.degrees_one() && c.gl_invariance_fails() && c.not_found,
          "F = " + c.f_value.get_str() + ", after g_1: " + c.value_after.get_str() +
              (c.not_found ? ", NotFound" : ", found")};
}

} // namespace

int main()
{
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  VerifyOptions prop1;
  prop1.k = 3;
  prop1.trials = 12;
  const std::vector<Criterion> criteria{
      {1, "Kronecker generators", 1, example1},
      {2, "2x2 trace identities", 1, [] { return suite("lemma1"); }},
      {3, "determinant via route sets, k = 1..3", 30, [&] { return suite("prop1", prop1); }},
      {4, "route set of the sample permutation", 1, example2},
      {5, "k = 2 class count", 1, census},
      {6, "semi-invariance of simple-route traces", 10, invariance},
      {7, "reduction soundness, length <= 6", 10, [] { return suite("reduction"); }},
      {8, "DZ coefficients in the generator algebra", 30, membership},
      {9, "counterexample certificate", 120, counterexample},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    }
    catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.ok && secs < c.limit;
    all = all && ok;
    std::printf("%s  %d  %-42s %7.3f s (limit %g s)  %s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit,
                o.detail.c_str());
  }
  return all ? 0 : 1;
}
