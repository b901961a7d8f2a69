// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <modext/blocks.hpp>
#include <modext/catalog.hpp>
#include <modext/constructions.hpp>
#include <modext/derivations.hpp>
#include <modext/structure.hpp>

#include "oracle/brute_force.hpp"
#include "support/corpus.hpp"

#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace modext;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct PairData {
  corpus::Entry entry;
  ModuleExtension t;
  DerivationSpace der_t;
};

std::vector<PairData> load_corpus() {
  std::vector<PairData> out;
  for (auto& e : corpus::pairs()) {
    ModuleExtension t = trivial_extension(e.a, e.u);
    DerivationSpace der = derivation_space(t.total, regular_bimodule(t.total));
    out.push_back({std::move(e), std::move(t), std::move(der)});
  }
  return out;
}

LinearMap random_combination(std::mt19937_64& rng, const DerivationSpace& der, std::size_t rows, std::size_t cols) {
  Vector w(der.dim());
  for (auto& x : w) x = corpus::small_rational(rng);
  return Matrix::unflatten(rows, cols, der.space.combine(w));
}

bool oracle_is_derivation(const ModuleExtension& t, const LinearMap& d) {
  const oracle::Product mul = corpus::oracle_product(t.total);
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j) {
      const Vector ei = oracle::unit(t.dim(), i), ej = oracle::unit(t.dim(), j);
      if (d.apply(mul(ei, ej)) != mul(ei, d.apply(ej)) + mul(d.apply(ei), ej)) return false;
    }
  return true;
}

// 1. block conditions <=> Leibniz rule
Outcome criterion1(const std::vector<PairData>& corpus) {
  std::mt19937_64 rng(101);
  std::size_t random = 0, basis = 0, combos = 0, perturbed = 0, derivations = 0, disagreements = 0;
  auto test = [&](const ModuleExtension& t, const BlockDecomposition& b) {
    const bool blocks = check_block_conditions(t, b).passed();
    const bool leibniz = is_derivation(t, assemble(t, b)).passed();
    if (blocks != leibniz) ++disagreements;
    if (leibniz) ++derivations;
  };
  for (const auto& p : corpus) {
    const std::size_t m = p.t.base_dim(), n = p.t.module_dim(), d = p.t.dim();
    for (int k = 0; k < 16; ++k, ++random)
      test(p.t, {corpus::random_matrix(rng, m, m), corpus::random_matrix(rng, m, n), corpus::random_matrix(rng, n, m),
                 corpus::random_matrix(rng, n, n)});
    for (const auto& x : p.der_t.basis) {
      test(p.t, blocks_of(p.t, x));
      ++basis;
    }
    for (int k = 0; k < 16; ++k, ++combos) test(p.t, blocks_of(p.t, random_combination(rng, p.der_t, d, d)));
    for (int k = 0; k < 16; ++k, ++perturbed) {
      LinearMap x = random_combination(rng, p.der_t, d, d);
      x(rng() % d, rng() % d) += corpus::small_rational(rng);
      test(p.t, blocks_of(p.t, x));
    }
  }
  const std::size_t total = random + basis + combos + perturbed;
  std::ostringstream s;
  s << corpus.size() << " pairs, " << total << " tuples (" << random << " random, " << basis << " Der(T) basis, "
    << combos << " Der(T) combinations, " << perturbed << " perturbed), " << derivations << " derivations, "
    << disagreements << " disagreements";
  return {corpus.size() >= 20 && random + combos + perturbed >= 1000 && disagreements == 0, s.str()};
}

// 2. D = D1 + D2 with both summands derivations
Outcome criterion2(const std::vector<PairData>& corpus) {
  std::size_t checked = 0, failures = 0;
  for (const auto& p : corpus)
    for (const auto& d : p.der_t.basis) {
      ++checked;
      const DerivationSplit s = split_d1_d2(p.t, d);
      if (s.d1 + s.d2 != d || !is_derivation(p.t, s.d1).passed() || !is_derivation(p.t, s.d2).passed() ||
          !oracle_is_derivation(p.t, s.d1) || !oracle_is_derivation(p.t, s.d2))
        ++failures;
    }
  return {checked > 0 && failures == 0,
          std::to_string(checked) + " Der(T) basis elements split, " + std::to_string(failures) + " failures"};
}

// 3. inner_witness agrees with inner_space membership; witnesses recovered for ad_(b,v)
Outcome criterion3(const std::vector<PairData>& corpus) {
  std::mt19937_64 rng(303);
  std::size_t checked = 0, disagreements = 0, inner = 0, constructed = 0, recovered = 0;
  for (const auto& p : corpus) {
    const Bimodule self = regular_bimodule(p.t.total);
    const Subspace inn = inner_space(p.t.total, self);
    std::vector<LinearMap> candidates = p.der_t.basis;
    for (int k = 0; k < 4; ++k) candidates.push_back(random_combination(rng, p.der_t, p.t.dim(), p.t.dim()));
    for (const auto& d : candidates) {
      ++checked;
      bool has_witness = false;
      try {
        has_witness = inner_witness(p.t, d).has_value();
      } catch (const std::logic_error&) {
        ++disagreements;
        continue;
      }
      if (has_witness != inn.contains(d.flatten())) ++disagreements;
      if (has_witness) ++inner;
    }
    for (int k = 0; k < 6; ++k) {
      const Vector x = corpus::random_vector(rng, p.t.dim());
      const LinearMap d = inner_derivation(p.t.total, self, x);
      ++constructed;
      const auto w = inner_witness(p.t, d);
      if (w && inner_derivation(p.t.total, self, p.t.pair(w->b, w->v)) == d) ++recovered;
    }
  }
  std::ostringstream s;
  s << checked << " corpus derivations (" << inner << " inner), " << disagreements << " disagreements; "
    << recovered << "/" << constructed << " constructed ad_(b,v) witnesses recovered";
  return {disagreements == 0 && recovered == constructed, s.str()};
}

// 4. known dimensions against the brute-force oracle
Outcome criterion4() {
  struct Case {
    std::string name;
    Algebra a;
    oracle::Product product;
    std::size_t der, inn;
  };
  const Algebra dual = catalog::dual_numbers();
  const Algebra m2 = catalog::matrix_algebra(2);
  const Algebra ut2 = catalog::upper_triangular(2);
  std::vector<Case> cases = {
      {"dual numbers", dual, corpus::oracle_product(dual), 1, 0},
      {"M2", m2, oracle::matrix_product(2), 3, 3},
      {"UT2", ut2, corpus::oracle_product(ut2), 2, 2},
  };
  for (std::size_t n = 1; n <= 4; ++n) {
    const Algebra z = catalog::zero_product(n);
    cases.push_back({"zero product dim " + std::to_string(n), z, corpus::oracle_product(z), n * n, 0});
  }
  bool ok = true;
  std::ostringstream s;
  for (const auto& c : cases) {
    const CohomologySummary lib = cohomology_summary(c.a, regular_bimodule(c.a));
    const oracle::Pair p = oracle::self_pair(c.a.dim(), c.product);
    const std::size_t der = oracle::derivation_dim(p), inn = oracle::inner_dim(p);
    const bool match = lib.der == c.der && lib.inn == c.inn && der == c.der && inn == c.inn;
    ok = ok && match;
    s << c.name << " Der/Inn/H1 = " << lib.der << "/" << lib.inn << "/" << lib.h1() << (match ? "" : " MISMATCH")
      << "; ";
  }
  std::string detail = s.str();
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

// 5. constructions produce derivations; broken hypotheses are rejected by name
Outcome criterion5(const std::vector<PairData>& corpus) {
  std::mt19937_64 rng(505);
  std::size_t built = 0, built_fail = 0;
  auto accept = [&](const ConstructionResult& r) {
    ++built;
    if (!r.verification.passed() || !is_derivation(r.extension, r.derivation).passed() ||
        !oracle_is_derivation(r.extension, r.derivation))
      ++built_fail;
  };
  std::array<std::size_t, 4> rejected{}, negatives{};  // lift, transport, quotient, corner
  auto reject = [&](std::size_t recipe, const std::function<void()>& f) {
    ++negatives[recipe];
    try {
      f();
    } catch (const HypothesisError& e) {
      if (!e.hypothesis().empty() && !e.witness().empty()) ++rejected[recipe];
    }
  };

  std::vector<std::pair<std::string, Algebra>> algebras = corpus::algebras();
  for (const auto& p : corpus) {
    const Algebra& a = p.entry.a;
    const Bimodule& u = p.entry.u;
    const DerivationSpace der_au = derivation_space(a, u);
    // lift: basis and combinations of Der(A,U); random non-derivations
    for (const auto& delta : der_au.basis) accept(lift(p.t, delta));
    accept(lift(p.t, random_combination(rng, der_au, u.dim(), a.dim())));
    if (u.dim() > 0) {
      Matrix bad = corpus::random_matrix(rng, u.dim(), a.dim());
      if (!der_au.space.contains(bad.flatten())) reject(0, [&] { lift(p.t, bad); });
    }
  }

  for (const auto& [name, a] : algebras) {
    const Bimodule self = regular_bimodule(a);
    const ModuleExtension t = trivial_extension(a, self);
    const DerivationSpace der = derivation_space(a, self);
    const Matrix id = Matrix::identity(a.dim());
    const bool unital = unit_element(a).has_value();

    // transport with phi = psi = identity on U = A
    for (const auto& delta : der.basis) accept(transport(t, delta, id, id));
    accept(transport(t, Matrix(a.dim(), a.dim()), id, id));
    const LinearMap delta = der.dim() ? random_combination(rng, der, a.dim(), a.dim()) : Matrix(a.dim(), a.dim());
    reject(1, [&] { transport(t, delta, Rational(2) * id, id); });  // phi o psi = 2 I
    if (unital) reject(1, [&] { transport(t, id, id, id); });       // identity is not a derivation
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (is_module_hom(a, self, self, a.left_mult(i)).passed()) continue;
      reject(1, [&] { transport(t, delta, a.left_mult(i), id); });
      break;
    }

    // quotient: every ideal among 0, A, rad A and single basis vectors; each delta with delta(I) in I
    std::vector<Subspace> ideals = {Subspace::zero(a.dim()), Subspace::full(a.dim()), radical(a).radical};
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const Subspace s = Subspace::span(a.dim(), {unit_vector(a.dim(), i)});
      if (ideal_check(a, s).passed()) ideals.push_back(s);
      else reject(2, [&] { quotient_derivation(a, s, Matrix(a.dim(), a.dim())); });
    }
    for (const auto& ideal : ideals) {
      for (const auto& d : der.basis) {
        bool invariant = true;
        for (const auto& v : ideal.vectors()) invariant = invariant && ideal.contains(d.apply(v));
        if (invariant) accept(quotient_derivation(a, ideal, d));
        else reject(2, [&] { quotient_derivation(a, ideal, d); });
      }
      if (unital && !ideal.is_zero()) reject(2, [&] { quotient_derivation(a, ideal, id); });
    }

    // corner: idempotent basis vectors and the unit
    std::vector<Vector> idempotents;
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (is_idempotent(a, unit_vector(a.dim(), i)).nontrivial && is_idempotent(a, unit_vector(a.dim(), i)).idempotent)
        idempotents.push_back(unit_vector(a.dim(), i));
    if (auto e = unit_element(a)) idempotents.push_back(*e);
    for (const auto& p : idempotents) {
      for (const auto& d : der.basis) accept(corner_tau(a, p, d));
      accept(corner_tau(a, p, Matrix(a.dim(), a.dim())));
      if (unital) reject(3, [&] { corner_tau(a, p, id); });
    }
    reject(3, [&] { corner_tau(a, zero_vector(a.dim()), Matrix(a.dim(), a.dim())); });
    for (int k = 0; k < 3; ++k) {
      const Vector x = corpus::random_vector(rng, a.dim());
      if (!is_idempotent(a, x).idempotent) reject(3, [&] { corner_tau(a, x, Matrix(a.dim(), a.dim())); });
    }
  }

  // transport through the first summand of M2 + M2
  {
    const Algebra m2 = catalog::matrix_algebra(2);
    const Algebra a = catalog::direct_sum(m2, m2);
    Matrix proj(4, 8), emb(8, 4);
    for (std::size_t i = 0; i < 4; ++i) proj(i, i) = emb(i, i) = 1;
    const ModuleExtension t = trivial_extension(a, catalog::restrict_scalars(a, m2, proj, regular_bimodule(m2)));
    Vector x = zero_vector(8);
    x[1] = 1;
    x[6] = 3;
    accept(transport(t, inner_derivation(a, regular_bimodule(a), x), proj, emb));
    reject(1, [&] { transport(t, Matrix::identity(8), proj, emb); });
  }

  const char* names[] = {"lift", "transport", "quotient", "corner"};
  bool ok = built_fail == 0;
  std::ostringstream s;
  s << built << " constructions, " << built_fail << " unverified; rejected";
  for (std::size_t r = 0; r < 4; ++r) {
    s << " " << names[r] << " " << rejected[r] << "/" << negatives[r];
    ok = ok && negatives[r] >= 10 && rejected[r] == negatives[r];
  }
  return {ok, s.str()};
}

// 6. radical properties
Outcome criterion6(const std::vector<PairData>& corpus) {
  std::size_t ext_fail = 0, quot_fail = 0, oracle_fail = 0, oracle_checked = 0;
  for (const auto& p : corpus) {
    const Subspace rad = radical(p.t.total).radical;
    for (std::size_t j = 0; j < p.t.module_dim(); ++j)
      if (!rad.contains(p.t.embed_u.column(j))) {
        ++ext_fail;
        break;
      }
  }
  const auto algebras = corpus::algebras();
  for (const auto& [name, a] : algebras) {
    const Subspace rad = radical(a).radical;
    if (!radical(quotient_algebra(a, rad)).is_semisimple) ++quot_fail;
    if (a.dim() <= 4) {
      ++oracle_checked;
      if (Subspace::span(a.dim(), oracle::nilpotent_radical(a.dim(), corpus::oracle_product(a))) != rad) ++oracle_fail;
    }
  }
  std::ostringstream s;
  s << "0+U in rad T fails " << ext_fail << "/" << corpus.size() << "; A/rad not semisimple " << quot_fail << "/"
    << algebras.size() << "; oracle mismatches " << oracle_fail << "/" << oracle_checked;
  return {ext_fail == 0 && quot_fail == 0 && oracle_fail == 0, s.str()};
}

// 7. submultiplicativity constant
Outcome criterion7() {
  std::mt19937_64 rng(707);
  std::size_t algebras = 0, violations = 0, unattained = 0, pairs = 0;
  for (const auto& [name, a] : corpus::algebras()) {
    ++algebras;
    const Rational c = submultiplicativity_constant(a);
    for (int k = 0; k < 10000; ++k, ++pairs) {
      const Vector x = corpus::random_vector(rng, a.dim()), y = corpus::random_vector(rng, a.dim());
      if (l1_norm(a.mul(x, y)) > c * l1_norm(x) * l1_norm(y)) ++violations;
    }
    bool attained = false;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) attained = attained || l1_norm(a.basis_product(i, j)) == c;
    if (!attained) ++unattained;
  }
  std::ostringstream s;
  s << algebras << " algebras, " << pairs << " random pairs, " << violations << " violations, equality unattained in "
    << unattained;
  return {violations == 0 && unattained == 0, s.str()};
}

std::string capture(const std::string& command) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) throw std::runtime_error("cannot run " + command);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 8. byte-identical repeated CLI runs on the shipped files
Outcome criterion8() {
  const std::string cli = MODEXT_CLI_PATH;
  const std::string dir = MODEXT_DATA_DIR;
  const std::string out_file = (std::filesystem::temp_directory_path() / "modext_acceptance_out.json").string();
  std::vector<std::string> commands;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string f = entry.path().string();
    for (const char* c : {"validate", "der", "analyze", "--json analyze", "--json der"}) {
      const std::string cmd = c;
      const std::string extra = cmd == "der" ? " --inner --h1" : cmd == "--json der" ? " --h1" : "";
      commands.push_back(cmd + " " + f + extra);
    }
  }
  commands.push_back("decompose " + dir + "/dual_numbers.json --map D");
  commands.push_back("decompose " + dir + "/dual_numbers.json --map zero");
  commands.push_back("decompose " + dir + "/ut2.json --map D");
  commands.push_back("der " + dir + "/ut2.json --module file --h1");
  commands.push_back("construct lift " + dir + "/dual_numbers.json");
  commands.push_back("construct lift " + dir + "/dual_numbers.json --delta bad");
  commands.push_back("construct transport " + dir + "/dual_numbers.json --delta delta_a");
  commands.push_back("construct quotient " + dir + "/ut2.json");
  commands.push_back("construct quotient " + dir + "/zero_product2.json --delta swap");
  commands.push_back("construct corner " + dir + "/m2.json --out " + out_file);
  commands.push_back("analyze " + dir + "/m2.json --simple --idempotent p --submult");
  commands.push_back("--seed 3 analyze " + dir + "/ut2.json --hypotheses");

  std::size_t differing = 0;
  for (const auto& c : commands) {
    const std::string line = cli + " " + c + " 2>&1; echo \"exit=$?\"";
    const std::string first = capture(line);
    const std::string first_file = read_file(out_file);
    const std::string second = capture(line);
    if (first != second || read_file(out_file) != first_file) ++differing;
  }
  std::filesystem::remove(out_file);
  return {differing == 0, std::to_string(commands.size()) + " commands run twice, " + std::to_string(differing) +
                              " differ"};
}

// 9. documentation states what is not reproduced
Outcome criterion9() {
  std::string readme;
  for (char c : read_file(MODEXT_README)) {
    if (std::isspace(static_cast<unsigned char>(c))) c = ' ';
    if (c != ' ' || readme.empty() || readme.back() != ' ') readme += c;
  }
  const bool ok = readme.find("automatic-continuity theorems") != std::string::npos &&
                  readme.find("not reproducible") != std::string::npos &&
                  readme.find("vacuous") != std::string::npos;
  return {ok, ok ? "README states that the automatic-continuity theorems are vacuous in finite dimension and not "
                   "reproducible; the criteria above substitute for them"
                 : "README does not state that the continuity theorems are not reproducible"};
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<PairData> corpus = load_corpus();
  struct Criterion {
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"block conditions C1-C6 <=> Leibniz rule on T(A,U)", [&] { return criterion1(corpus); }},
      {"every derivation splits as D1 + D2", [&] { return criterion2(corpus); }},
      {"innerness witness agrees with inner-space membership", [&] { return criterion3(corpus); }},
      {"known dimensions match the brute-force oracle", [] { return criterion4(); }},
      {"constructions verified, broken hypotheses rejected", [&] { return criterion5(corpus); }},
      {"radical properties", [&] { return criterion6(corpus); }},
      {"submultiplicativity constant", [] { return criterion7(); }},
      {"deterministic CLI output", [] { return criterion8(); }},
      {"continuity theorems documented as not reproducible", [] { return criterion9(); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].title << " -- "
              << o.detail << std::endl;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
