// Command-line front end over the library: parsing, algebra validation,
// model evaluation, proof checking, chain decomposition and embedding, the
// theory-extension runner, and the acceptance sweep.
//
// Exit codes: 0 success, 1 verification failure (invalid proof, refuted
// formula, failed check), 2 usage, 3 unreadable or malformed input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tnl/acceptance.hpp"
#include "tnl/calculus.hpp"
#include "tnl/chain.hpp"
#include "tnl/henkin.hpp"
#include "tnl/io.hpp"
#include "tnl/presented.hpp"
#include "tnl/semantics.hpp"
#include "tnl/syntax.hpp"
#include "tnl/tnorm.hpp"

namespace {

using nlohmann::json;
using namespace tnl;

// ---------- output plumbing ----------

bool g_records = false;

void emit(const json& rec, const std::string& text) {
  if (g_records)
    std::cout << rec.dump() << "\n";
  else
    std::cout << text << "\n";
}

// Loads a file and prints its provenance line.
std::string load(const std::string& path) {
  std::string bytes = slurp(path);
  std::string hash = fnv1a_hex(bytes);
  emit(json{{"record", "input"}, {"path", path}, {"fnv1a", hash}},
       "# input " + path + " fnv1a=" + hash);
  return bytes;
}

std::string verdict_kind_str(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Valid: return "valid";
    case Verdict::Kind::ValidBoundedInf: return "valid-with-bounded-inf";
    case Verdict::Kind::Invalid: return "invalid";
  }
  return "?";
}

// ---------- parse ----------

int cmd_parse(const std::string& file, const std::string& sig_file) {
  std::string text = load(file);
  Signature sig;
  if (!sig_file.empty()) {
    sig = parse_signature(load(sig_file));
  } else {
    sig = infer_signature(fixture_lines(text));
  }
  for (const FormulaPtr& f : parse_formula_list(text, sig)) {
    int w = enum_weight(f, sig);
    emit(json{{"record", "formula"}, {"text", to_string(f)}, {"weight", w}},
         "[w=" + std::to_string(w) + "] " + to_string(f));
  }
  return 0;
}

// ---------- validate ----------

int validate_chain(const std::string& file) {
  ChainFile cf = parse_chain_file(load(file));
  int rc = 0;
  if (cf.finite) {
    BlCheckReport rep = check_bl_chain(*cf.finite);
    std::ostringstream ids;
    for (int i : cf.finite->idempotents()) ids << i << " ";
    emit(json{{"record", "chain"},
              {"n", cf.finite->n},
              {"table", cf.finite->table_str()},
              {"idempotents", cf.finite->idempotents()},
              {"ok", rep.ok}},
         "finite chain n=" + std::to_string(cf.finite->n) + ": " + cf.finite->table_str() +
             "\nidempotents: " + ids.str() + "\nresiduated lattice laws: " +
             (rep.ok ? "ok" : "VIOLATED"));
    for (const std::string& v : rep.violations) emit(json{{"record", "violation"}, {"text", v}}, "  " + v);
    if (!rep.ok) rc = 1;
  }
  if (cf.presented) {
    cf.presented->validate();
    SaturationReport sat = is_weakly_saturated(*cf.presented);
    emit(json{{"record", "presented"},
              {"describe", cf.presented->describe()},
              {"weakly_saturated", sat.ok}},
         "presented chain: " + cf.presented->describe() + "\nweakly saturated: " +
             (sat.ok ? "yes" : "NO"));
    for (const std::string& l : sat.lines) emit(json{{"record", "clause"}, {"text", l}}, "  " + l);
    if (!sat.ok) rc = 1;
  }
  return rc;
}

int validate_tnorm(const std::string& file) {
  TNorm t = parse_tnorm_file(load(file));
  t.validate();
  emit(json{{"record", "tnorm"},
            {"pieces", t.pieces.size()},
            {"describe", t.describe()}},
       "t-norm: " + t.describe());
  return 0;
}

// ---------- eval ----------

struct EvalInputs {
  std::string sig_file, chain_file, tnorm_file, model_file, list_file;
  std::vector<std::string> formulas;
};

template <class A>
int eval_all(const A& alg, const Structure<A>& m, const Signature& sig,
             const std::vector<FormulaPtr>& fs) {
  int rc = 0;
  for (const FormulaPtr& f : fs) {
    EvalResult<A> r = eval(alg, m, f);
    if (!r.ok) {
      emit(json{{"record", "eval"}, {"formula", to_string(f)}, {"ok", false}, {"error", r.error}},
           to_string(f) + " : error: " + r.error);
      rc = 1;
      continue;
    }
    std::string val;
    if constexpr (std::is_same_v<A, FiniteAlg>)
      val = std::to_string(r.value);
    else if constexpr (std::is_same_v<A, TNormAlg>)
      val = rat_str(r.value);
    else
      val = pelem_str(r.value);
    emit(json{{"record", "eval"},
              {"formula", to_string(f)},
              {"value", val},
              {"declared_limit", r.declared_limit},
              {"ok", true}},
         to_string(f) + " = " + val + (r.declared_limit ? "  (uses a declared limit)" : ""));
  }
  return rc;
}

int cmd_eval(const EvalInputs& in) {
  Signature sig = parse_signature(load(in.sig_file));
  std::vector<FormulaPtr> fs;
  if (!in.list_file.empty())
    for (FormulaPtr& f : parse_formula_list(load(in.list_file), sig)) fs.push_back(std::move(f));
  for (const std::string& s : in.formulas) fs.push_back(parse_formula(s, sig));
  if (fs.empty()) {
    std::cerr << "eval: no formulas given\n";
    return 2;
  }
  std::string model_text = load(in.model_file);
  if (!in.tnorm_file.empty()) {
    TNorm t = parse_tnorm_file(load(in.tnorm_file));
    return eval_all(TNormAlg{&t}, parse_tnorm_model(model_text, sig), sig, fs);
  }
  ChainFile cf = parse_chain_file(load(in.chain_file));
  if (cf.finite)
    return eval_all(FiniteAlg{&*cf.finite}, parse_finite_model(model_text, sig, *cf.finite),
                    sig, fs);
  return eval_all(PresentedAlg{&*cf.presented},
                  parse_presented_model(model_text, sig, *cf.presented), sig, fs);
}

// ---------- check-proof ----------

int cmd_check_proof(const std::vector<std::string>& files) {
  int rc = 0;
  for (const std::string& path : files) {
    ProofFixture f = parse_proof_fixture(load(path));
    Verdict v = check_proof(f.gamma, f.proof);
    bool matches = !f.expect || (*f.expect == v.kind &&
                                 (v.kind != Verdict::Kind::Invalid || v.step == f.expect_step));
    std::string note = !f.expect ? "" : matches ? "  (as annotated)" : "  (ANNOTATION MISMATCH)";
    emit(json{{"record", "verdict"},
              {"file", path},
              {"kind", verdict_kind_str(v.kind)},
              {"step", v.step},
              {"reason", v.reason},
              {"annotated", static_cast<bool>(f.expect)},
              {"matches_annotation", matches}},
         path + ": " + to_string(v) + note);
    if (!v.ok() || !matches) rc = 1;
  }
  return rc;
}

// ---------- decompose / saturate ----------

FiniteChain load_finite_chain(const std::string& file) {
  ChainFile cf = parse_chain_file(load(file));
  if (!cf.finite) throw ParseError("chain file has no finite form: " + file);
  return *cf.finite;
}

int cmd_decompose(const std::string& file) {
  FiniteChain c = load_finite_chain(file);
  Decomposition d = decompose(c);
  FiniteChain back = ordinal_sum(d.components);
  bool exact = back.n == c.n && back.mul == c.mul;
  emit(json{{"record", "chain"}, {"n", c.n}, {"table", c.table_str()}},
       "finite chain n=" + std::to_string(c.n) + ": " + c.table_str());
  json comps = json::array();
  for (size_t i = 0; i < d.components.size(); ++i) {
    const FiniteHoop& h = d.components[i];
    comps.push_back(json{{"size", h.size},
                         {"wajsberg", h.satisfies_wajsberg()},
                         {"simple", h.is_simple()}});
    std::ostringstream line;
    line << "component " << i << ": size " << h.size
         << (h.satisfies_wajsberg() ? ", wajsberg" : ", NOT WAJSBERG")
         << (h.is_simple() ? ", simple" : ", not simple");
    emit(comps.back(), line.str());
  }
  emit(json{{"record", "decomposition"}, {"components", comps}, {"round_trip_exact", exact}},
       std::string("ordinal sum rebuilds the chain: ") + (exact ? "yes" : "NO"));
  return exact ? 0 : 1;
}

int cmd_saturate(const std::string& file) {
  FiniteChain c = load_finite_chain(file);
  int rc = 0;
  for (const Cut& cut : enumerate_cuts(c)) {
    std::optional<int> s = saturating_idempotent(c, cut);
    std::ostringstream line;
    line << "cut pos=" << cut.pos << ": Y = [" << cut.pos << ", " << c.n << "), ";
    if (s)
      line << "saturating idempotent " << *s;
    else {
      line << "NO saturating idempotent";
      rc = 1;
    }
    json j{{"record", "cut"}, {"pos", cut.pos}};
    if (s) j["idempotent"] = *s;
    emit(j, line.str());
  }
  return rc;
}

// ---------- embed ----------

int cmd_embed(const std::string& file) {
  ChainFile cf = parse_chain_file(load(file));
  if (!cf.presented) throw ParseError("chain file has no presented form: " + file);
  cf.presented->validate();
  EmbedResult er = embed_into_tnorm(*cf.presented);
  std::ostringstream bps;
  json jb = json::array();
  for (const Rat& b : er.map.breakpoints()) {
    bps << rat_str(b) << " ";
    jb.push_back(rat_str(b));
  }
  emit(json{{"record", "embedding"},
            {"map", er.map.describe()},
            {"tnorm", er.tnorm.describe()},
            {"breakpoints", jb},
            {"pairs_checked", er.report.pairs_checked},
            {"ok", er.report.ok}},
       "map: " + er.map.describe() + "\nt-norm: " + er.tnorm.describe() +
           "\nbreakpoints: " + bps.str() + "\nchecked pairs: " +
           std::to_string(er.report.pairs_checked) + (er.report.ok ? ", ok" : ", VIOLATIONS"));
  for (const std::string& v : er.report.violations)
    emit(json{{"record", "violation"}, {"text", v}}, "  " + v);
  return er.report.ok ? 0 : 1;
}

// ---------- henkin ----------

struct HenkinInputs {
  std::string sig_file, gamma_file, phi_file, check_file, out_file;
  int steps = 25;
};

int report_trace_check(const Trace& t, Oracle& oracle) {
  TraceCheck tc = check_trace(t, oracle);
  std::ostringstream line;
  line << "trace: " << t.records.size() << " steps, "
       << (t.suspended ? "suspended (" + t.suspend_reason + ")" : "complete")
       << "; check " << (tc.ok() ? "ok" : "FAILED") << "; prelinearity " << tc.prelinearity_ok
       << "/" << tc.prelinearity_pairs << ", fresh witnesses " << tc.henkin_ok << "/"
       << tc.henkin_foralls;
  emit(json{{"record", "trace-check"},
            {"steps", t.records.size()},
            {"suspended", t.suspended},
            {"suspend_reason", t.suspend_reason},
            {"ok", tc.ok()},
            {"prelinearity_ok", tc.prelinearity_ok},
            {"prelinearity_pairs", tc.prelinearity_pairs},
            {"fresh_ok", tc.henkin_ok},
            {"fresh_foralls", tc.henkin_foralls}},
       line.str());
  for (const std::string& v : tc.violations) emit(json{{"record", "violation"}, {"text", v}}, "  " + v);
  return tc.ok() ? 0 : 1;
}

int cmd_henkin(const HenkinInputs& in) {
  Signature sig = parse_signature(load(in.sig_file));
  DefaultOracle oracle(sig);
  if (!in.check_file.empty()) {
    Trace t = trace_from_records(load(in.check_file), sig);
    return report_trace_check(t, oracle);
  }
  std::vector<FormulaPtr> gamma;
  if (!in.gamma_file.empty()) gamma = parse_formula_list(load(in.gamma_file), sig);
  FormulaPtr phi = parse_formula_list(load(in.phi_file), sig).at(0);
  Trace t = run_henkin(sig, gamma, phi, oracle, in.steps);
  for (const TraceRecord& r : t.records) {
    std::ostringstream line;
    line << "step " << r.index << " [" << r.case_tag << "] psi = " << to_string(r.psi)
         << "; +" << r.gamma_delta.size() << " to the core";
    if (r.fresh_constant) line << "; fresh " << *r.fresh_constant;
    if (r.k) line << "; k = " << *r.k;
    json j{{"record", "step"},
           {"index", r.index},
           {"case", r.case_tag},
           {"psi", to_string(r.psi)},
           {"added", r.gamma_delta.size()}};
    if (r.fresh_constant) j["fresh_constant"] = *r.fresh_constant;
    if (r.k) j["k"] = *r.k;
    emit(j, line.str());
  }
  if (!in.out_file.empty()) {
    std::ofstream out(in.out_file);
    out << trace_to_records(t);
    emit(json{{"record", "output"}, {"path", in.out_file}}, "# trace written to " + in.out_file);
  }
  return report_trace_check(t, oracle);
}

// ---------- sweep ----------

int cmd_sweep(const std::string& suite, std::string fixtures) {
  if (fixtures.empty())
    if (const char* env = std::getenv("TNL_FIXTURES")) fixtures = env;
  if (fixtures.empty()) fixtures = TNL_FIXTURE_DIR;
  bool all_pass = true;
  for (const CriterionResult& r : run_acceptance(suite, fixtures)) {
    char line[512];
    std::snprintf(line, sizeof line, "criterion %2d %s %-28s (%6.2fs)  %s", r.id,
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
    emit(json{{"record", "criterion"},
              {"id", r.id},
              {"suite", r.suite},
              {"name", r.name},
              {"pass", r.pass},
              {"seconds", r.seconds},
              {"detail", r.detail}},
         line);
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

// ---------- main ----------

int main(int argc, char** argv) {
  CLI::App app{"totally ordered fuzzy-logic toolkit"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "records"}))
      ->capture_default_str();

  std::string parse_file, parse_sig;
  auto* sc_parse = app.add_subcommand("parse", "parse a formula list and print canonical forms");
  sc_parse->add_option("file", parse_file, "formula list file")->required();
  sc_parse->add_option("--sig", parse_sig, "signature file (inferred when absent)");

  std::string val_chain, val_tnorm;
  auto* sc_validate = app.add_subcommand("validate", "validate a chain or t-norm description");
  sc_validate->add_option("--chain", val_chain, "chain file");
  sc_validate->add_option("--tnorm", val_tnorm, "t-norm file");

  EvalInputs ev;
  auto* sc_eval = app.add_subcommand("eval", "evaluate formulas in a model");
  sc_eval->add_option("--sig", ev.sig_file, "signature file")->required();
  sc_eval->add_option("--model", ev.model_file, "model file")->required();
  sc_eval->add_option("--chain", ev.chain_file, "chain file (algebra of values)");
  sc_eval->add_option("--tnorm", ev.tnorm_file, "t-norm file (algebra of values)");
  sc_eval->add_option("--file", ev.list_file, "formula list file");
  sc_eval->add_option("formulas", ev.formulas, "formulas to evaluate");

  std::vector<std::string> proof_files;
  auto* sc_check = app.add_subcommand("check-proof", "check proof files");
  sc_check->add_option("files", proof_files, "proof files")->required();

  std::string dec_chain;
  auto* sc_decompose = app.add_subcommand("decompose", "split a finite chain into hoop components");
  sc_decompose->add_option("--chain", dec_chain, "chain file")->required();

  std::string sat_chain;
  auto* sc_saturate = app.add_subcommand("saturate", "list cuts and their saturating idempotents");
  sc_saturate->add_option("--chain", sat_chain, "chain file")->required();

  std::string emb_chain;
  auto* sc_embed = app.add_subcommand("embed", "embed a presented chain into a piecewise t-norm");
  sc_embed->add_option("--chain", emb_chain, "chain file with a presented form")->required();

  HenkinInputs hk;
  auto* sc_henkin = app.add_subcommand("henkin", "run or replay the theory-extension loop");
  sc_henkin->add_option("--sig", hk.sig_file, "signature file")->required();
  sc_henkin->add_option("--gamma", hk.gamma_file, "hypothesis list file");
  sc_henkin->add_option("--phi", hk.phi_file, "goal sentence file (first formula)");
  sc_henkin->add_option("--steps", hk.steps, "enumeration steps")->capture_default_str();
  sc_henkin->add_option("--out", hk.out_file, "write the trace as records");
  sc_henkin->add_option("--check", hk.check_file, "replay a recorded trace instead of running");

  std::string sweep_suite = "all", sweep_fixtures;
  auto* sc_sweep = app.add_subcommand("sweep", "run the acceptance checks");
  sc_sweep->add_option("suite", sweep_suite, "all | algebra | semantics | calculus | henkin")
      ->capture_default_str();
  sc_sweep->add_option("--fixtures", sweep_fixtures,
                       "fixture directory (default: $TNL_FIXTURES, then the source tree)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  g_records = format == "records";

  try {
    if (*sc_parse) return cmd_parse(parse_file, parse_sig);
    if (*sc_validate) {
      if (val_chain.empty() == val_tnorm.empty()) {
        std::cerr << "validate: give exactly one of --chain, --tnorm\n";
        return 2;
      }
      return val_chain.empty() ? validate_tnorm(val_tnorm) : validate_chain(val_chain);
    }
    if (*sc_eval) {
      if (ev.chain_file.empty() == ev.tnorm_file.empty()) {
        std::cerr << "eval: give exactly one of --chain, --tnorm\n";
        return 2;
      }
      return cmd_eval(ev);
    }
    if (*sc_check) return cmd_check_proof(proof_files);
    if (*sc_decompose) return cmd_decompose(dec_chain);
    if (*sc_saturate) return cmd_saturate(sat_chain);
    if (*sc_embed) return cmd_embed(emb_chain);
    if (*sc_henkin) {
      if (hk.check_file.empty() && hk.phi_file.empty()) {
        std::cerr << "henkin: give --phi (run) or --check (replay)\n";
        return 2;
      }
      return cmd_henkin(hk);
    }
    if (*sc_sweep) return cmd_sweep(sweep_suite, sweep_fixtures);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
