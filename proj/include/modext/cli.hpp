#pragma once

// Command-line front end: validate, der, decompose, construct, analyze.
//
// Exit status: 0 success, 1 axiom or hypothesis failure, 2 input error,
// 3 internal defect.

#include <modext/blocks.hpp>
#include <modext/constructions.hpp>
#include <modext/derivations.hpp>
#include <modext/extension.hpp>
#include <modext/io.hpp>
#include <modext/report.hpp>
#include <modext/structure.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace modext::cli {

using report::json;

enum ExitCode : int { kOk = 0, kHypothesisFailure = 1, kInputError = 2, kInternalError = 3 };

struct Options {
  bool json_output = false;
  std::uint64_t seed = kDefaultSeed;
  std::string path;
  // der
  std::string module_choice = "self";
  bool inner = false;
  bool h1 = false;
  // decompose
  std::string map_name;
  // construct
  std::string recipe;
  std::string delta_name = "delta";
  std::string phi_name = "phi";
  std::string psi_name = "psi";
  std::string ideal_name = "I";
  std::string idempotent_name = "p";
  std::string out_path;
  // analyze
  bool radical = false, center = false, unit = false, simple = false, annihilator = false;
  bool submult = false, surjective = false, hypotheses = false;
  std::string idempotent;
};

/// A parsed input file with its algebra and (if declared) bimodule validated.
struct Loaded {
  io::AlgebraFile file;
  std::string digest;
  Algebra algebra;
  std::optional<Bimodule> module;

  const Bimodule& require_module() const {
    if (!module) throw io::InputError("/bimodule", "this command needs a bimodule section");
    return *module;
  }

  const Matrix& map(const std::string& name, const std::string& source, const std::string& target) const {
    const io::NamedMap* m = file.find_map(name);
    if (!m) throw io::InputError("/maps", "no map named '" + name + "'");
    if (m->source != source || m->target != target)
      throw io::InputError("/maps", "map '" + name + "' must go from " + source + " to " + target + ", found " +
                                        m->source + " -> " + m->target);
    return m->matrix;
  }

  const Vector& element(const std::string& name, const std::string& carrier) const {
    const io::NamedElement* e = file.find_element(name);
    if (!e) throw io::InputError("/elements", "no element named '" + name + "'");
    if (e->carrier != carrier) throw io::InputError("/elements", "element '" + name + "' must live in " + carrier);
    return e->coords;
  }

  Subspace subspace(const std::string& name, const std::string& carrier) const {
    const io::NamedSubspace* s = file.find_subspace(name);
    if (!s) throw io::InputError("/subspaces", "no subspace named '" + name + "'");
    if (s->carrier != carrier) throw io::InputError("/subspaces", "subspace '" + name + "' must live in " + carrier);
    return Subspace::span(file.carrier_dim(carrier, "/subspaces"), s->basis);
  }
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::InputError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Loaded load(const std::string& path) {
  const std::string text = slurp(path);
  io::AlgebraFile file = io::parse_algebra_file(text);
  Algebra a = make_algebra(file.mul, file.basis_names);
  std::optional<Bimodule> u;
  if (file.bimodule) {
    if (file.bimodule->self) u = regular_bimodule(a);
    else u = make_bimodule(a, file.bimodule->left, file.bimodule->right, file.bimodule->basis_names);
  }
  return Loaded{std::move(file), report::digest(text), std::move(a), std::move(u)};
}

inline json header(const std::string& command, const Options& opt, const std::string& digest) {
  json j;
  j["command"] = command;
  j["input"] = opt.path;
  j["input_digest"] = digest;
  return j;
}

inline json matrices_json(const std::vector<Matrix>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(io::matrix_json(m));
  return a;
}

inline json blocks_json(const BlockDecomposition& b) {
  return json{{"delta1 (A -> A)", io::matrix_json(b.delta1)},
              {"tau1 (U -> A)", io::matrix_json(b.tau1)},
              {"delta2 (A -> U)", io::matrix_json(b.delta2)},
              {"tau2 (U -> U)", io::matrix_json(b.tau2)}};
}

// ---------------------------------------------------------------------------

inline int cmd_validate(const Options& opt, json& out) {
  const std::string text = slurp(opt.path);
  const io::AlgebraFile file = io::parse_algebra_file(text);
  out = header("validate", opt, report::digest(text));
  AlgebraValidation av = validate_algebra(file.mul, file.basis_names);
  const Check& assoc = av.associativity;
  json alg;
  alg["dim"] = file.dim();
  alg["associativity"] = std::to_string(assoc.total - assoc.failed) + "/" + std::to_string(assoc.total) +
                         " identities hold";
  if (!assoc.passed()) alg["failures"] = report::check_json(assoc);
  alg["valid"] = report::yes_no(av.valid());
  int code = av.valid() ? kOk : kHypothesisFailure;
  if (av.valid()) {
    const std::optional<Vector> e = unit_element(*av.algebra);
    alg["unit"] = e ? report::combination(file.basis_names, *e) : "none";
  }
  out["algebra"] = std::move(alg);

  if (file.bimodule && av.valid()) {
    json mod;
    if (file.bimodule->self) {
      mod["kind"] = "self";
      mod["valid"] = "yes";
    } else {
      BimoduleValidation bv = validate_bimodule(*av.algebra, file.bimodule->left, file.bimodule->right,
                                                file.bimodule->basis_names);
      mod["dim"] = file.module_dim();
      for (const auto& c : bv.report.checks) {
        std::string line = std::to_string(c.total - c.failed) + "/" + std::to_string(c.total) + " identities hold";
        if (c.informational) line += " (informational)";
        mod[c.name] = line;
      }
      if (const Check* bad = bv.report.first_failure()) mod["failures"] = report::check_json(*bad);
      mod["valid"] = report::yes_no(bv.valid());
      if (!bv.valid()) code = kHypothesisFailure;
    }
    out["bimodule"] = std::move(mod);
  }
  out["status"] = code == kOk ? "valid" : "invalid";
  return code;
}

inline int cmd_der(const Options& opt, json& out) {
  const Loaded in = load(opt.path);
  out = header("der", opt, in.digest);
  const Algebra& a = in.algebra;
  std::optional<Bimodule> self;
  const Bimodule* u = nullptr;
  if (opt.module_choice == "self") {
    self = regular_bimodule(a);
    u = &*self;
  } else if (opt.module_choice == "file") {
    u = &in.require_module();
  } else {
    throw io::InputError("--module", "expected 'self' or 'file'");
  }
  out["module"] = opt.module_choice == "self" ? "A (regular bimodule)" : "U (bimodule section)";
  out["identity"] = "D(ab) = a D(b) + D(a) b";
  const DerivationSpace der = derivation_space(a, *u);
  out["dim Der"] = der.dim();
  out["Der basis (dimU x dimA matrices)"] = matrices_json(der.basis);
  std::string summary = "dim Der = " + std::to_string(der.dim());
  if (opt.inner || opt.h1) {
    const Subspace inn = inner_space(a, *u);
    if (!der.space.contains(inn)) throw std::logic_error("inner derivations escape Der");
    out["dim Inn"] = inn.dim();
    if (opt.inner) {
      std::vector<Matrix> ms;
      for (const auto& v : inn.vectors()) ms.push_back(Matrix::unflatten(u->dim(), a.dim(), v));
      out["Inn basis (a -> a x - x a)"] = matrices_json(ms);
    }
    summary += ", dim Inn = " + std::to_string(inn.dim());
    if (opt.h1) {
      out["H1"] = der.dim() - inn.dim();
      summary += ", H1 = " + std::to_string(der.dim() - inn.dim());
    }
  }
  out["summary"] = summary;
  return kOk;
}

inline int cmd_decompose(const Options& opt, json& out) {
  const Loaded in = load(opt.path);
  out = header("decompose", opt, in.digest);
  const ModuleExtension t = trivial_extension(in.algebra, in.require_module());
  const Matrix& d = in.map(opt.map_name, "T", "T");
  out["map"] = opt.map_name;
  out["identity"] = "D(a,u) = (delta1(a) + tau1(u), delta2(a) + tau2(u))";
  const BlockDecomposition b = blocks_of(t, d);
  out["blocks"] = blocks_json(b);
  const ConditionReport conditions = check_block_conditions(t, b);
  out["conditions"] = report::conditions_json(conditions);
  out["coupling note"] =
      "C3/C4 pair tau2 with delta1, as forced by the product (a,u)(b,v) = (ab, av + ub); the delta2 variants "
      "are listed as informational checks";
  const ConditionReport leibniz = is_derivation(t, d);
  out["derivation"] = report::yes_no(leibniz.passed());
  out["conditions agree with Leibniz rule"] = report::yes_no(conditions.passed() == leibniz.passed());
  if (!leibniz.passed()) {
    out["leibniz"] = report::check_json(leibniz.checks.front());
    out["status"] = "not a derivation on T(A,U)";
    return kHypothesisFailure;
  }
  const DerivationSplit split = split_d1_d2(t, d);
  out["split D = D1 + D2"] = json{{"D1 (a,u) -> (delta1(a) + tau1(u), tau2(u))", io::matrix_json(split.d1)},
                                  {"D2 (a,u) -> (0, delta2(a))", io::matrix_json(split.d2)},
                                  {"D1 derivation", report::yes_no(is_derivation(t, split.d1).passed())},
                                  {"D2 derivation", report::yes_no(is_derivation(t, split.d2).passed())}};
  if (auto w = inner_witness(t, d)) {
    out["inner"] = json{{"status", "inner"},
                        {"b", report::combination(in.algebra.basis_names(), w->b)},
                        {"v", report::combination(in.module->basis_names(), w->v)},
                        {"witness", "D = ad_(b,v): (a,u) -> (a,u)(b,v) - (b,v)(a,u)"}};
  } else {
    out["inner"] = json{{"status", "not inner"}};
  }
  out["status"] = "derivation";
  return kOk;
}

inline int cmd_construct(const Options& opt, json& out) {
  const Loaded in = load(opt.path);
  out = header("construct", opt, in.digest);
  out["recipe"] = opt.recipe;
  const Algebra& a = in.algebra;
  std::optional<ConstructionResult> res;
  try {
    if (opt.recipe == "lift") {
      out["identity"] = "D(a,u) = (0, delta(a))";
      const ModuleExtension t = trivial_extension(a, in.require_module());
      res = lift(t, in.map(opt.delta_name, "A", "U"));
    } else if (opt.recipe == "transport") {
      out["identity"] = "tau = phi o delta o psi, D(a,x) = (delta(a), tau(x))";
      const ModuleExtension t = trivial_extension(a, in.require_module());
      res = transport(t, in.map(opt.delta_name, "A", "A"), in.map(opt.phi_name, "A", "U"),
                      in.map(opt.psi_name, "U", "A"));
    } else if (opt.recipe == "quotient") {
      out["identity"] = "tau(a + I) = delta(a) + I, D(a,u) = (delta(a), tau(u))";
      res = quotient_derivation(a, in.subspace(opt.ideal_name, "A"), in.map(opt.delta_name, "A", "A"));
    } else if (opt.recipe == "corner") {
      out["identity"] = "U = Ap with x a = 0, tau(x) = delta(x) p, D(a,x) = (delta(a), tau(x))";
      res = corner_tau(a, in.element(opt.idempotent_name, "A"), in.map(opt.delta_name, "A", "A"));
    } else {
      throw io::InputError("recipe", "unknown recipe '" + opt.recipe + "' (lift, transport, quotient, corner)");
    }
  } catch (const HypothesisError& e) {
    out["status"] = "hypothesis failed";
    out["hypothesis"] = e.hypothesis();
    out["witness"] = e.witness();
    return kHypothesisFailure;
  }
  const ModuleExtension& t = res->extension;
  out["extension"] = json{{"dim A", t.base_dim()}, {"dim U", t.module_dim()}, {"dim T", t.dim()}};
  out["blocks"] = blocks_json(blocks_of(t, res->derivation));
  out["D"] = io::matrix_json(res->derivation);
  out["verification"] = report::conditions_json(res->verification);
  out["verified"] = report::yes_no(res->verification.passed());
  if (!opt.out_path.empty()) {
    io::AlgebraFile f = io::make_file(t.base, &t.module);
    f.maps.push_back({"D", "T", "T", res->derivation});
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) throw io::InputError(opt.out_path, "cannot write output file");
    file << io::print_algebra_file(f);
    out["output"] = opt.out_path;
  }
  out["status"] = "constructed";
  return kOk;
}

inline int cmd_analyze(const Options& opt, json& out) {
  const Loaded in = load(opt.path);
  out = header("analyze", opt, in.digest);
  const Algebra& a = in.algebra;
  const auto& names = a.basis_names();
  const bool all = !(opt.radical || opt.center || opt.unit || opt.simple || opt.annihilator || opt.submult ||
                     opt.surjective || opt.hypotheses || !opt.idempotent.empty());
  if (all || opt.unit) {
    const auto e = unit_element(a);
    out["unit"] = e ? report::combination(names, *e) : "none";
  }
  if (all || opt.center) {
    const Subspace z = center(a);
    out["center"] = json{{"basis", report::span(names, z)}, {"dim", z.dim()}};
  }
  if (all || opt.radical) {
    const RadicalReport r = radical(a);
    out["radical"] = json{{"basis", report::span(names, r.radical)},
                          {"dim", r.radical.dim()},
                          {"semisimple", report::yes_no(r.is_semisimple)},
                          {"method", r.method},
                          {"summary", "radical = " + report::span(names, r.radical) +
                                          ", semisimple: " + report::yes_no(r.is_semisimple)}};
  }
  if (all || opt.simple) {
    const SimplicityReport s = is_simple_prime(a, opt.seed);
    json j{{"simple", to_string(s.simple)},
           {"prime", to_string(s.prime)},
           {"summary", std::string("simple: ") + to_string(s.simple) + ", prime: " + to_string(s.prime)},
           {"evidence", s.evidence},
           {"seed", opt.seed},
           {"note", "finite-dimensional algebras are prime exactly when simple"}};
    out["simplicity"] = std::move(j);
  }
  if (all || opt.submult) {
    out["submultiplicativity"] =
        json{{"C", to_string(submultiplicativity_constant(a))}, {"statement", "||xy||_1 <= C ||x||_1 ||y||_1"}};
  }
  if (!opt.idempotent.empty()) {
    const IdempotentStatus s = is_idempotent(a, in.element(opt.idempotent, "A"));
    out["idempotent"] = json{{"element", opt.idempotent},
                             {"idempotent", report::yes_no(s.idempotent)},
                             {"non-trivial", report::yes_no(s.nontrivial)}};
  }
  if ((all && in.module) || opt.annihilator) {
    const Subspace ann = annihilator(a, in.require_module());
    out["annihilator"] = json{{"ann_A U", report::span(names, ann)}, {"zero", report::yes_no(ann.is_zero())}};
  }
  if ((all && in.module) || opt.surjective) {
    const auto phi = find_surjective_left_hom(a, in.require_module(), opt.seed);
    json j{{"found", report::yes_no(phi.has_value())}};
    if (phi) j["phi (U x A)"] = io::matrix_json(*phi);
    else j["note"] = "no surjective map among the seeded random draws; this does not prove non-existence";
    out["surjective left hom A -> U"] = std::move(j);
  }
  if ((all && in.module) || opt.hypotheses) {
    const Bimodule& u = in.require_module();
    const bool semisimple = radical(a).is_semisimple;
    const bool unital = unit_element(a).has_value();
    const bool faithful = annihilator(a, u).is_zero();
    const bool surjective = find_surjective_left_hom(a, u, opt.seed).has_value();
    out["transfer hypotheses"] =
        json{{"A semisimple", report::yes_no(semisimple)},
             {"A unital (finite-dimensional bounded approximate identity)", report::yes_no(unital)},
             {"ann_A U = 0", report::yes_no(faithful)},
             {"surjective left A-module hom A -> U found", report::yes_no(surjective)},
             {"all hold", report::yes_no(semisimple && unital && faithful && surjective)},
             {"note", "continuity of derivations is automatic in finite dimension; only the hypotheses are audited"}};
  }
  return kOk;
}

// ---------------------------------------------------------------------------

/// Runs one command line; the report goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  if (const char* env = std::getenv("MODEXT_SEED")) {
    try {
      opt.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: MODEXT_SEED must be a non-negative integer\n";
      return kInputError;
    }
  }
  CLI::App app{"Exact derivations of module extension algebras T(A,U)", "modext"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.json_output, "Print the report as JSON");
  app.add_option("--seed", opt.seed, "Seed for randomized steps (default: $MODEXT_SEED or built-in)");

  auto* validate = app.add_subcommand("validate", "Check associativity and bimodule axioms");
  validate->add_option("file", opt.path)->required();

  auto* der = app.add_subcommand("der", "Derivation space, inner derivations, H1");
  der->add_option("file", opt.path)->required();
  der->add_option("--module", opt.module_choice, "self | file")->check(CLI::IsMember({"self", "file"}));
  der->add_flag("--inner", opt.inner, "Also compute inner derivations");
  der->add_flag("--h1", opt.h1, "Report dim H1 = dim Der - dim Inn");

  auto* decompose = app.add_subcommand("decompose", "Block decomposition of a map on T(A,U)");
  decompose->add_option("file", opt.path)->required();
  decompose->add_option("--map", opt.map_name, "Name of a T -> T map in the file")->required();

  auto* construct = app.add_subcommand("construct", "Build a derivation on a module extension");
  construct->add_option("recipe", opt.recipe, "lift | transport | quotient | corner")->required();
  construct->add_option("file", opt.path)->required();
  construct->add_option("--delta", opt.delta_name, "Derivation map name (default: delta)");
  construct->add_option("--phi", opt.phi_name, "transport: A -> U map name (default: phi)");
  construct->add_option("--psi", opt.psi_name, "transport: U -> A map name (default: psi)");
  construct->add_option("--ideal", opt.ideal_name, "quotient: ideal subspace name (default: I)");
  construct->add_option("--p", opt.idempotent_name, "corner: idempotent element name (default: p)");
  construct->add_option("-o,--out", opt.out_path, "Write T(A,U) and the derivation D to this file");

  auto* analyze = app.add_subcommand("analyze", "Structural invariants and hypothesis predicates");
  analyze->add_option("file", opt.path)->required();
  analyze->add_flag("--radical", opt.radical);
  analyze->add_flag("--center", opt.center);
  analyze->add_flag("--unit", opt.unit);
  analyze->add_flag("--simple", opt.simple);
  analyze->add_flag("--annihilator", opt.annihilator);
  analyze->add_option("--idempotent", opt.idempotent, "Element name to test for p p = p");
  analyze->add_flag("--submult", opt.submult);
  analyze->add_flag("--surjective-hom", opt.surjective);
  analyze->add_flag("--hypotheses", opt.hypotheses);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  json tree;
  int code = kOk;
  try {
    if (*validate) code = cmd_validate(opt, tree);
    else if (*der) code = cmd_der(opt, tree);
    else if (*decompose) code = cmd_decompose(opt, tree);
    else if (*construct) code = cmd_construct(opt, tree);
    else code = cmd_analyze(opt, tree);
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const AxiomViolation& e) {
    err << "error: " << e.what() << "\n";
    return kHypothesisFailure;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << "\n";
    return kHypothesisFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  out << (opt.json_output ? report::to_json_text(tree) : report::to_text(tree));
  return code;
}

}  // namespace modext::cli
