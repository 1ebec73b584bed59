#include <fstream>
#include <functional>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "cli.hpp"
#include "homotope/errors.hpp"
#include "homotope/fiber.hpp"
#include "homotope/linalg.hpp"
#include "homotope/nonassoc.hpp"
#include "homotope/structure.hpp"

namespace homotope::cli {

namespace {

struct Options {
  std::string field;
  std::string format = "human";
  std::string out;

  std::string algebra;
  std::string delta;
  std::string side = "left";
  std::string module;
  std::vector<std::string> modules;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  std::size_t max_dim = 8;
  std::size_t d = 2;
  std::uint64_t p = 0;
  std::size_t samples = 200;
  std::string tensor;
  std::string v;
  std::vector<std::string> ideal;
  std::string u;
  std::size_t rank = 1;
};

class Context {
 public:
  explicit Context(const Options& o) : opt(o) {}

  const Options& opt;
  std::string digest_input;

  Json load_json(const std::string& path) {
    std::string text = read_file(path);
    digest_input += '\0';
    digest_input += text;
    try {
      return Json::parse(text);
    } catch (const Json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
  }

  AlgebraPtr load_algebra(const std::string& path) {
    AlgebraPtr a = share(parse_algebra(load_json(path), path));
    if (!opt.field.empty() && !(FieldSpec::parse(opt.field) == a->field()))
      throw FieldMismatch(path + ": algebra is over " + a->field().to_string() + ", --field says " + opt.field);
    return a;
  }

  ModuleRep load_module(const std::string& path, const AlgebraPtr& fallback) {
    std::filesystem::path p(path);
    Json doc = load_json(path);
    if (doc.contains("algebra") && doc.at("algebra").is_string())
      digest_input += read_file(p.parent_path() / doc.at("algebra").get<std::string>());
    return parse_module(doc, p.parent_path(), fallback, path);
  }

  Element element(const Algebra& a, const std::string& text, const char* what) {
    try {
      return parse_element(a, text);
    } catch (const Error& e) {
      throw ParseError(std::string(what) + ": " + e.what());
    }
  }

  FieldSpec sampling_field() const {
    if (opt.p != 0) return FieldSpec::prime(opt.p);
    if (!opt.field.empty()) return FieldSpec::parse(opt.field);
    return FieldSpec::prime(101);
  }
};

// Runs one check body; library errors become an error record under that name.
void guarded(Report& r, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    r.add(name, Status::Error, Json{{"message", e.what()}});
  }
}

Json elements_json(const std::vector<Element>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(element_json(x));
  return j;
}

Json vectors_json(const std::vector<Vector>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(element_json(Element(x)));
  return j;
}

// Commands on a single algebra file.

void cmd_check(Context& cx, Report& r) {
  AlgebraPtr a = cx.load_algebra(cx.opt.algebra);
  r.add("parse", true, {{"dim", a->dim()}, {"field", a->field().to_string()}});
  r.add("associative", a->is_associative(), {{"associative", a->is_associative()}});
  auto u = find_unit(*a);
  r.add("unit", true, {{"present", u.has_value()}, {"unit", u ? element_json(*u) : Json(nullptr)}});
  r.add("commutative", true, {{"commutative", a->is_commutative()}});
  if (a->lift()) {
    Json sizes = a->lift()->block_sizes;
    r.add("wedderburn_lift", true, {{"block_sizes", sizes}, {"radical_dim", a->lift()->radical.size()}});
  }
}

void cmd_radical(Context& cx, Report& r) {
  AlgebraPtr a = cx.load_algebra(cx.opt.algebra);
  guarded(r, "radical", [&] {
    std::vector<Element> rad = jacobson_radical(*a);
    r.add("radical", is_two_sided_ideal(*a, rad), {{"dim", rad.size()}, {"basis", elements_json(rad)}});
    SemisimpleQuotient sq = semisimple_quotient(a);
    r.add("quotient_semisimple", jacobson_radical(*sq.algebra).empty(), {{"dim", sq.algebra->dim()}});
  });
}

void cmd_blocks(Context& cx, Report& r) {
  AlgebraPtr a = cx.load_algebra(cx.opt.algebra);
  guarded(r, "blocks", [&] {
    SemisimpleQuotient sq = semisimple_quotient(a);
    BlockData b = wedderburn_blocks(*sq.algebra);
    std::size_t total = 0;
    for (auto n : b.block_sizes) total += n * n;
    Json sizes = b.block_sizes;
    r.add("blocks", total == sq.algebra->dim(),
          {{"block_sizes", sizes}, {"semisimple_dim", sq.algebra->dim()}, {"radical_dim", sq.radical.size()},
           {"central_idempotents", elements_json(b.idempotents)}});
  });
}

void cmd_homotope(Context& cx, Report& r) {
  AlgebraPtr a = cx.load_algebra(cx.opt.algebra);
  Element delta = cx.element(*a, cx.opt.delta, "--delta");
  Side side = cx.opt.side == "right" ? Side::Right : Side::Left;
  Algebra h = homotope_algebra(*a, delta, side);
  r.add("homotope", !a->is_associative() || h.is_associative(),
        {{"side", cx.opt.side}, {"associative", h.is_associative()}, {"algebra", algebra_json(h)}});
  if (a->is_associative() && a->unit()) {
    Algebra b = augmented_homotope(*a, delta);
    r.add("augmented_homotope", b.is_associative() && find_unit(b).has_value(), {{"algebra", algebra_json(b)}});
  }
}

void cmd_well_tempered(Context& cx, Report& r) {
  AlgebraPtr a = cx.load_algebra(cx.opt.algebra);
  Element delta = cx.element(*a, cx.opt.delta, "--delta");
  bool wt = is_well_tempered_criterion(*a, delta);
  r.add("well_tempered", true,
        {{"well_tempered", wt}, {"dim_ideal", principal_two_sided_ideal(*a, delta).size()}, {"dim", a->dim()}});
  guarded(r, "b_plus_projective", [&] {
    AugmentationModules mods = augmentation_modules(a, delta);
    bool l = is_projective(mods.b_plus_left), rt = is_projective(mods.b_plus_right);
    r.add("b_plus_projective", (l && rt) == wt, {{"left", l}, {"right", rt}});
  });
  guarded(r, "ext1", [&] {
    std::size_t e = ext1_trivial(a, delta);
    r.add("ext1", (e == 0) == wt, {{"dim", e}});
  });
}

void cmd_normal_form(Context& cx, Report& r) {
  AlgebraPtr a = cx.load_algebra(cx.opt.algebra);
  Element delta = cx.element(*a, cx.opt.delta, "--delta");
  guarded(r, "suitable_form", [&] {
    SuitableForm sf = suitable_form(*a, delta);
    const Algebra& A = *a;
    bool ok = A.multiply(sf.s, sf.s) == sf.s && A.multiply(sf.s, sf.r).is_zero() && A.multiply(sf.r, sf.s).is_zero() &&
              A.multiply(A.multiply(sf.u, delta), sf.v) == sf.s + sf.r && is_invertible(A, sf.u) &&
              is_invertible(A, sf.v);
    Json sets = Json::array();
    for (const auto& s : sf.index_sets) sets.push_back(s);
    r.add("suitable_form", ok,
          {{"s", element_json(sf.s)},
           {"r", element_json(sf.r)},
           {"u", element_json(sf.u)},
           {"v", element_json(sf.v)},
           {"index_sets", sets}});
  });
}

void cmd_rep_dims(Context& cx, Report& r) {
  AlgebraPtr a = cx.load_algebra(cx.opt.algebra);
  Element delta = cx.element(*a, cx.opt.delta, "--delta");
  guarded(r, "rep_dims", [&] {
    std::vector<std::size_t> ranks = block_ranks(a, delta);
    std::vector<std::size_t> dims = homotope_rep_dims(a, delta);
    Algebra b = augmented_homotope(*a, delta);
    std::size_t rb = jacobson_radical(b).size();
    std::size_t sum = 1;
    for (auto x : ranks) sum += x * x;
    Json rj = ranks, dj = dims;
    r.add("rep_dims", b.dim() - rb == sum,
          {{"block_ranks", rj}, {"rep_dims", dj}, {"dim_b", b.dim()}, {"dim_radical_b", rb}});
    RadicalComparison rc = radical_compare(*a, delta);
    r.add("radical_inclusion", rc.contained && (rc.equal == rc.delta_invertible),
          {{"contained", rc.contained},
           {"equal", rc.equal},
           {"delta_invertible", rc.delta_invertible},
           {"dim_radical_a", rc.dim_radical_a},
           {"dim_radical_b", rc.dim_radical_b}});
  });
}

void cmd_projective(Context& cx, Report& r) {
  AlgebraPtr fallback = cx.opt.algebra.empty() ? nullptr : cx.load_algebra(cx.opt.algebra);
  ModuleRep m = cx.load_module(cx.opt.module, fallback);
  r.add("projective", true,
        {{"projective", is_projective(m)}, {"dim", m.dim()}, {"side", m.side() == Side::Left ? "left" : "right"}});
}

void cmd_recollement(Context& cx, Report& r) {
  AlgebraPtr a = cx.load_algebra(cx.opt.algebra);
  Element delta = cx.element(*a, cx.opt.delta, "--delta");
  std::vector<ModuleRep> samples;
  for (const auto& f : cx.opt.modules) samples.push_back(cx.load_module(f, a).tagged(f));
  guarded(r, "recollement", [&] {
    RecollementReport rep = recollement_report(a, delta, samples);
    r.add("well_tempered", true, {{"well_tempered", rep.well_tempered}});
    for (const auto& c : rep.checks) {
      Json data = Json::object();
      for (const auto& [k, v] : c.data) data[k] = v;
      r.add(c.name + " [" + c.sample + "]", c.passed, std::move(data));
    }
  });
}

void cmd_oracle(Context& cx, Report& r) {
  r.seed = cx.opt.seed;
  FieldSpec f = cx.opt.field.empty() ? FieldSpec::rationals() : FieldSpec::parse(cx.opt.field);
  std::size_t agree = 0;
  for (std::size_t t = 0; t < cx.opt.trials; ++t) {
    const std::string name = "trial " + std::to_string(t);
    bool ok = false;
    guarded(r, name, [&] {
      OracleTrial tr = oracle_trial(cx.opt.seed + t, cx.opt.max_dim, f);
      ok = tr.agree() && (tr.ext1 == 0) == tr.criterion;
      r.add(name, ok,
            {{"seed", tr.seed},
             {"profile", to_string(tr.profile)},
             {"dim", tr.a->dim()},
             {"delta", element_json(tr.delta)},
             {"well_tempered", tr.criterion},
             {"projective_left", tr.projective_left},
             {"projective_right", tr.projective_right},
             {"ext1", tr.ext1}});
    });
    if (ok) ++agree;
  }
  r.add("agreement", agree == cx.opt.trials, {{"agree", agree}, {"trials", cx.opt.trials}});
}

// nonassoc

MultiplicationTensor tensor_input(Context& cx) {
  if (!cx.opt.tensor.empty()) return *cx.load_algebra(cx.opt.tensor);
  return random_tensor(cx.opt.d, cx.sampling_field(), cx.opt.seed);
}

void cmd_density(Context& cx, Report& r) {
  r.seed = cx.opt.seed;
  FieldSpec f = cx.sampling_field();
  DensityReport d = genericity_density(cx.opt.d, f, cx.opt.samples, cx.opt.seed);
  r.add("density", true,
        {{"d", cx.opt.d},
         {"field", f.to_string()},
         {"samples", d.samples},
         {"frac_l_invertible", d.frac_l_invertible},
         {"frac_r_invertible", d.frac_r_invertible},
         {"frac_simple_left", d.frac_simple_left},
         {"frac_simple_right", d.frac_simple_right}});
}

void cmd_preimages(Context& cx, Report& r) {
  std::optional<MultiplicationTensor> source;
  if (cx.opt.tensor.empty()) {
    r.seed = cx.opt.seed;
    source = constructed_generic_tensor(cx.opt.d, cx.sampling_field(), cx.opt.seed);
  }
  const MultiplicationTensor mp = source ? homotope_map_right(*source, source->basis(0)) : *cx.load_algebra(cx.opt.tensor);
  const Element v = source || cx.opt.v.empty() ? mp.basis(0) : cx.element(mp, cx.opt.v, "--v");
  guarded(r, "preimages", [&] {
    std::vector<MultiplicationTensor> pre = homotope_preimages(mp, v);
    const std::size_t expect = std::size_t{1} << mp.dim();
    r.add("count", pre.size() == expect, {{"count", pre.size()}, {"expected", expect}});
    bool distinct = true, found = false;
    for (std::size_t i = 0; i < pre.size(); ++i) {
      r.add("maps back " + std::to_string(i), same_algebra(homotope_map_right(pre[i], v), mp),
            {{"algebra", algebra_json(pre[i])}});
      for (std::size_t j = 0; j < i; ++j) distinct = distinct && !same_algebra(pre[i], pre[j]);
      if (source) found = found || same_algebra(pre[i], *source);
    }
    r.add("distinct", distinct);
    if (source) r.add("contains source", found);
  });
}

void cmd_classify(Context& cx, Report& r) {
  if (cx.opt.tensor.empty()) r.seed = cx.opt.seed;
  MultiplicationTensor m = tensor_input(cx);
  InvertibilityReport inv = invertibility_class(m, cx.opt.samples, cx.opt.seed);
  r.add("bruck_class", true,
        {{"class", static_cast<int>(inv.cls)},
         {"name", to_string(inv.cls)},
         {"left_witness", inv.left_witness ? element_json(*inv.left_witness) : Json(nullptr)},
         {"right_witness", inv.right_witness ? element_json(*inv.right_witness) : Json(nullptr)},
         {"tried", inv.tried}});
  for (auto [side, name] : {std::pair{EnvelopeSide::Left, "left"}, std::pair{EnvelopeSide::Right, "right"},
                            std::pair{EnvelopeSide::Both, "both"}}) {
    SimplicityResult s = simplicity_check(m, side);
    Status st = s.kind == SimplicityKind::Inconclusive ? Status::Inconclusive : Status::Pass;
    r.add(std::string("simplicity ") + name, st,
          {{"result", to_string(s.kind)}, {"envelope_dim", s.envelope_dim}, {"witness", vectors_json(s.witness)}});
  }
  if (inv.left_witness && inv.right_witness) {
    guarded(r, "kaplansky", [&] {
      MultiplicationTensor k = kaplansky_unitalize(m, *inv.left_witness, *inv.right_witness);
      auto unit = find_unit(k);
      Element want = m.multiply(*inv.left_witness, *inv.right_witness);
      r.add("kaplansky", unit && *unit == want, {{"unit", element_json(want)}});
    });
  }
}

// fiber

FiberSetup fiber_input(Context& cx, AlgebraPtr& a) {
  a = cx.load_algebra(cx.opt.algebra);
  std::vector<Element> gens;
  for (const auto& g : cx.opt.ideal) gens.push_back(cx.element(*a, g, "--ideal"));
  return fiber_setup(a, ideal_closure(*a, gens));
}

Json setup_json(const FiberSetup& s) {
  return {{"dim_a", s.a->dim()}, {"dim_ideal", s.ideal.size()}, {"dim_quotient", s.c->dim()}, {"dim_b", s.b->dim()}};
}

void report_unit(const FiberSetup& s, const ModuleRep& l, Report& r) {
  Matrix eta = glue_unit(s, l);
  std::size_t rk = eta.rows() == 0 ? 0 : rank(eta);
  r.add("unit surjective", rk == eta.rows(), {{"dim_module", l.dim()}, {"dim_glued", eta.rows()}, {"rank", rk}});
}

void cmd_unit_kernel(Context& cx, Report& r) {
  AlgebraPtr a;
  FiberSetup s = fiber_input(cx, a);
  r.add("setup", true, setup_json(s));
  Element ua = cx.element(*a, cx.opt.u, "--u");
  auto ub = fiber_element(s, ua, Scalar::zero(a->field()));
  if (!ub) throw ParseError("--u: element is not in the ideal");
  ModuleRep v = cyclic_quotient(s, *ub);
  std::size_t k = unit_kernel(s, v).size();
  bool hyp = s.c->dim() > 0 && !ua.is_zero() && colon_equals_ideal(s, ua);
  Json data = {{"dim_kernel", k}, {"dim_module", v.dim()}, {"colon_hypothesis", hyp}};
  if (hyp) {
    data["expected"] = s.c->dim() - 1;
    r.add("unit kernel", k == s.c->dim() - 1, std::move(data));
  } else {
    r.add("unit kernel", Status::Inconclusive, std::move(data));
  }
  report_unit(s, v, r);
}

void cmd_unglue(Context& cx, Report& r) {
  AlgebraPtr a;
  FiberSetup s = fiber_input(cx, a);
  r.add("setup", true, setup_json(s));
  ModuleRep l = regular_module(s.b, Side::Left);
  if (!cx.opt.u.empty()) {
    auto ub = fiber_element(s, cx.element(*a, cx.opt.u, "--u"), Scalar::zero(a->field()));
    if (!ub) throw ParseError("--u: element is not in the ideal");
    l = cyclic_quotient(s, *ub);
  }
  GluingTriple t = unglue(s, l);
  r.add("triple", true, {{"n", t.n}, {"dim_m", t.m.dim()}, {"dim_module", l.dim()}});
  report_unit(s, l, r);
}

void cmd_glue(Context& cx, Report& r) {
  r.seed = cx.opt.seed;
  AlgebraPtr a;
  FiberSetup s = fiber_input(cx, a);
  r.add("setup", true, setup_json(s));
  std::mt19937_64 rng(cx.opt.seed);
  GluingTriple t = free_triple(s, cx.opt.rank, rng);
  Glued g = glue(s, t);
  r.add("glued", true, {{"rank", cx.opt.rank}, {"dim", g.module.dim()}});
  RoundTrip rt = glue_round_trip(s, t);
  r.add("round trip", rt.ok(), {{"n_iso", rt.n_iso}, {"m_iso", rt.m_iso}, {"compatible", rt.compatible}});
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations with homotopes of finite-dimensional algebras", "homotope"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--field", o.field, "rationals or fp:<p>");
  app.add_option("--format", o.format, "human or structured")->check(CLI::IsMember({"human", "structured"}));
  app.add_option("--out", o.out, "write the report here instead of stdout");

  std::map<CLI::App*, std::function<void(Context&, Report&)>> handlers;
  auto with_algebra = [&](const char* name, const char* desc, auto fn, bool delta) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("algebra", o.algebra, "algebra file")->required()->check(CLI::ExistingFile);
    if (delta) s->add_option("--delta", o.delta, "element as coordinates or a basis label")->required();
    handlers[s] = fn;
    return s;
  };
  with_algebra("check", "associativity, unit and lift", cmd_check, false);
  with_algebra("radical", "Jacobson radical", cmd_radical, false);
  with_algebra("blocks", "Wedderburn blocks of A/R(A)", cmd_blocks, false);
  with_algebra("homotope", "homotope and augmented homotope", cmd_homotope, true)
      ->add_option("--side", o.side)
      ->check(CLI::IsMember({"left", "right"}));
  with_algebra("well-tempered", "criterion, projectivity of B+ and Ext^1", cmd_well_tempered, true);
  with_algebra("normal-form", "suitable form s + r", cmd_normal_form, true);
  with_algebra("rep-dims", "irreducible representation dimensions of B", cmd_rep_dims, true);
  with_algebra("recollement", "recollement identities", cmd_recollement, true)
      ->add_option("--modules", o.modules, "extra sample module files")
      ->check(CLI::ExistingFile);

  CLI::App* proj = app.add_subcommand("projective", "projectivity of a module");
  proj->add_option("--module", o.module)->required()->check(CLI::ExistingFile);
  proj->add_option("--algebra", o.algebra, "used when the module file names no algebra")->check(CLI::ExistingFile);
  handlers[proj] = cmd_projective;

  CLI::App* oracle = app.add_subcommand("oracle", "criterion against projectivity on seeded instances");
  oracle->add_option("--trials", o.trials)->required();
  oracle->add_option("--seed", o.seed)->required();
  oracle->add_option("--max-dim", o.max_dim);
  handlers[oracle] = cmd_oracle;

  CLI::App* na = app.add_subcommand("nonassoc", "multiplication tensors");
  na->require_subcommand(1, 1);
  auto na_sub = [&](const char* name, const char* desc, auto fn) {
    CLI::App* s = na->add_subcommand(name, desc);
    s->add_option("--d", o.d);
    s->add_option("--p", o.p);
    s->add_option("--seed", o.seed)->required();
    handlers[s] = fn;
    return s;
  };
  na_sub("density", "genericity sampling", cmd_density)->add_option("--samples", o.samples);
  CLI::App* pre = na_sub("preimages", "preimages under R(v)", cmd_preimages);
  pre->add_option("--tensor", o.tensor)->check(CLI::ExistingFile);
  pre->add_option("--v", o.v);
  CLI::App* cls = na_sub("classify", "invertibility class and simplicity", cmd_classify);
  cls->add_option("--tensor", o.tensor)->check(CLI::ExistingFile);
  cls->add_option("--samples", o.samples);

  CLI::App* fb = app.add_subcommand("fiber", "fiber product B = A x_{A/I} k");
  fb->require_subcommand(1, 1);
  auto fb_sub = [&](const char* name, const char* desc, auto fn) {
    CLI::App* s = fb->add_subcommand(name, desc);
    s->add_option("algebra", o.algebra)->required()->check(CLI::ExistingFile);
    s->add_option("--ideal", o.ideal, "ideal generators")->required();
    handlers[s] = fn;
    return s;
  };
  CLI::App* g = fb_sub("glue", "module from a free gluing triple", cmd_glue);
  g->add_option("--rank", o.rank);
  g->add_option("--seed", o.seed)->required();
  fb_sub("unglue", "gluing triple of B or B/(u)", cmd_unglue)->add_option("--u", o.u);
  fb_sub("unit-kernel", "kernel of the unit on B/(u)", cmd_unit_kernel)->add_option("--u", o.u)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  CLI::App* chosen = nullptr;
  std::string command;
  for (CLI::App* s = &app; !s->get_subcommands().empty();) {
    s = s->get_subcommands().front();
    command += (command.empty() ? "" : " ") + s->get_name();
    chosen = s;
  }

  Context cx(o);
  Report report;
  report.command = command;
  try {
    if (!o.field.empty()) FieldSpec::parse(o.field);
    handlers.at(chosen)(cx, report);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::string args;
  for (int i = 1; i < argc; ++i) {
    std::string_view a = argv[i];
    if (a == "--out" || a == "--format") {
      ++i;
      continue;
    }
    if (a.starts_with("--out=") || a.starts_with("--format=")) continue;
    args += a;
    args += '\0';
  }
  report.input_digest = sha256_hex(args + cx.digest_input);

  const std::string text = emit(report, o.format == "structured" ? Format::Structured : Format::Human);
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f || !(f << text)) {
      err << "error: cannot write " << o.out << "\n";
      return 2;
    }
  }
  return report.failed() ? 1 : 0;
}

}  // namespace homotope::cli
