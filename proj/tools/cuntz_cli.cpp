// cuntz: command-line front end for the O_n calculus and the permutative
// automorphism census.
#include <CLI11.hpp>
#include <json.hpp>

#include <cuntz/cuntz.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace cuntz;

constexpr int kExitUndecided = 2;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << j.dump(2) << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string word_str(int n, int len, std::uint64_t idx) { return Word::from_index(n, len, idx).str(); }

json trees_json(const PermUnitary& sigma) {
  json out = json::array();
  if (sigma.k < 1) return out;
  const auto fam = reduced_maps(sigma);
  const auto diag = tree_check(fam);
  for (int i = 0; i < sigma.n; ++i) {
    const auto& t = diag.trees[i];
    json edges = json::array();
    for (std::uint32_t a = 0; a < fam.f[i].size(); ++a)
      edges.push_back({word_str(sigma.n, sigma.k - 1, a), word_str(sigma.n, sigma.k - 1, fam.f[i][a])});
    json entry = {{"map", "f_" + std::to_string(i + 1)}, {"is_tree", t.is_tree}, {"edges", edges}};
    if (t.is_tree) {
      entry["root"] = word_str(sigma.n, sigma.k - 1, t.root);
      entry["height"] = t.height;
      entry["leaves"] = t.leaf_count;
      entry["shape"] = t.shape;
    }
    out.push_back(entry);
  }
  return out;
}

json diagonal_json(const DiagonalVerdict& v) {
  json j = {{"verdict", to_string(v.outcome)}};
  if (v.yes()) j["m"] = v.m;
  if (!v.pair_cycle.empty()) {
    json cyc = json::array();
    for (std::size_t i = 0; i < v.pair_cycle.size(); ++i)
      cyc.push_back({{"pair", {v.pair_cycle[i].first, v.pair_cycle[i].second}}, {"letter", v.cycle_letters[i]}});
    j["cycle"] = cyc;
  }
  if (v.repeated) j["repeated_levels"] = {v.repeated->first, v.repeated->second};
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

json aut_json(const AutVerdict& v) {
  json j = {{"verdict", to_string(v.outcome)}};
  if (v.reason != AutVerdict::Reason::None) j["reason"] = to_string(v.reason);
  if (v.is_aut()) {
    j["inverse"] = perm_to_json(*v.inverse);
    j["h"] = v.h;
    j["m"] = v.m;
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

json optional_int(const std::optional<int>& v, int max) {
  if (v) return *v;
  return ">" + std::to_string(max);
}

// Either a permutation document or an element document.
struct Operand {
  std::optional<PermUnitary> perm;
  std::optional<AlgebraElement> element;

  AlgebraElement as_element() const { return perm ? perm_unitary(*perm) : *element; }
};

Operand read_operand(const std::string& path) {
  const json j = read_json(path);
  Operand op;
  if (j.contains("map")) op.perm = perm_from_json(j);
  else if (j.contains("element")) op.element = element_from_document(j);
  else throw std::runtime_error(path + ": neither a permutation nor an element document");
  return op;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus and automorphism census for permutative endomorphisms of the Cuntz algebras"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "Full diagnostic for one permutation");
  std::string perm_path;
  int budget = 12;
  int max_power = 12;
  bool compare = false;
  std::string out_path;
  check->add_option("--perm", perm_path, "Permutation JSON")->required();
  check->add_option("--budget", budget, "Stabilization budget")->capture_default_str();
  check->add_option("--max-power", max_power, "Largest power tried for the orders")->capture_default_str();
  check->add_flag("--compare", compare, "Omit runtime so output is byte-stable");
  check->add_option("-o,--out", out_path, "Output file (default stdout)");

  // census
  auto* census = app.add_subcommand("census", "Count diagonal automorphisms (b) and automorphisms (d)");
  int cn = 2, ck = 2;
  std::string mode = "orbit";
  std::string checkpoint, csv_path;
  bool classes = false;
  census->add_option("--n", cn, "Alphabet size")->required();
  census->add_option("--k", ck, "Level")->required();
  census->add_option("--mode", mode, "brute or orbit")->check(CLI::IsMember({"brute", "orbit"}))->capture_default_str();
  census->add_option("--budget", budget, "Stabilization budget (orbit mode)")->capture_default_str();
  census->add_option("--checkpoint", checkpoint, "Resumable JSONL log (orbit mode)");
  census->add_option("--csv", csv_path, "Per-orbit CSV export (orbit mode)");
  census->add_flag("--classes", classes, "Also partition the collected automorphisms into outer classes");
  census->add_flag("--compare", compare, "Omit runtime so output is byte-stable");
  census->add_option("-o,--out", out_path, "Output file (default stdout)");

  // compose
  auto* compose = app.add_subcommand("compose", "Fusion composite lambda_a o lambda_b");
  std::string a_path, b_path;
  compose->add_option("--a", a_path, "Permutation or element JSON")->required();
  compose->add_option("--b", b_path, "Permutation or element JSON")->required();
  compose->add_option("-o,--out", out_path, "Output file (default stdout)");

  // order
  auto* order = app.add_subcommand("order", "Orders in Aut and Out");
  order->add_option("--perm", perm_path, "Permutation JSON")->required();
  order->add_option("--max", max_power, "Largest power tried")->capture_default_str();
  order->add_option("--budget", budget, "Stabilization budget")->capture_default_str();
  order->add_option("-o,--out", out_path, "Output file (default stdout)");

  // trees
  auto* trees = app.add_subcommand("trees", "Tree-shape census");
  trees->add_option("--n", cn, "Alphabet size")->required();
  trees->add_option("--k", ck, "Level")->required();
  trees->add_option("-o,--out", out_path, "Output file (default stdout)");

  // normalform
  auto* normal = app.add_subcommand("normalform", "Normal form of a generator expression");
  std::string expr_path, expr_text;
  int nn = 0;
  bool as_json = false;
  normal->add_option("--expr", expr_path, "File holding the expression");
  normal->add_option("--text", expr_text, "Expression given inline");
  normal->add_option("--n", nn, "Alphabet size (default: inferred)");
  normal->add_flag("--json", as_json, "Emit an element document");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto t0 = std::chrono::steady_clock::now();
    if (check->parsed()) {
      const PermUnitary sigma = perm_from_json(read_json(perm_path));
      AutOptions opt;
      opt.budget_m = budget;
      const auto diag = decide_diagonal(sigma);
      const auto aut = decide_automorphism(sigma, opt);
      json j = {{"schema", 1}, {"n", sigma.n}, {"k", sigma.k}, {"trees", trees_json(sigma)},
                {"diagonal", diagonal_json(diag)}, {"automorphism", aut_json(aut)}};
      const WordPerm u = sigma.word_perm();
      for (int i = 1; i <= sigma.n; ++i) j["fixes_S" + std::to_string(i)] = fixes_generator(u, i);
      if (aut.is_aut()) {
        const auto orders = power_order(sigma, max_power, opt);
        j["aut_order"] = optional_int(orders.aut_order, max_power);
        j["out_order"] = optional_int(orders.out_order, max_power);
        j["inner"] = orders.out_order == 1;
      }
      if (!compare) j["runtime_seconds"] = seconds_since(t0);
      emit(j, out_path);
      return aut.outcome == AutVerdict::Outcome::Undecided ? kExitUndecided : 0;
    }
    if (census->parsed()) {
      CensusOptions opt;
      opt.budget_m = budget;
      opt.checkpoint = checkpoint;
      opt.collect_automorphisms = classes;
      CensusReport r = mode == "brute" ? brute_census(cn, ck, opt) : orbit_census(cn, ck, opt);
      if (classes) {
        const auto part = class_representatives(r.automorphisms);
        r.class_count = part.classes.size();
      }
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw std::runtime_error("cannot write " + csv_path);
        f << census_csv(r);
      }
      emit(census_json(r, !compare), out_path);
      return r.undecided > 0 ? kExitUndecided : 0;
    }
    if (compose->parsed()) {
      const Operand a = read_operand(a_path);
      const Operand b = read_operand(b_path);
      if (a.perm && b.perm) {
        if (a.perm->n != b.perm->n) throw std::runtime_error("alphabet mismatch");
        const PermUnitary c = compose_perm(*a.perm, *b.perm);
        emit(perm_to_json(c.k == 0 ? PermUnitary::identity(c.n, 1) : c), out_path);
        return 0;
      }
      const Endo w = fusion_compose(Endo(a.as_element()), Endo(b.as_element()));
      if (auto p = as_word_perm(w.unitary())) {
        const WordPerm t = p->level() == 0 ? WordPerm::identity(p->alphabet(), 1) : *p;
        emit(perm_to_json(PermUnitary::from_word_perm(t)), out_path);
      } else {
        emit(element_document(w.unitary()), out_path);
      }
      return 0;
    }
    if (order->parsed()) {
      const PermUnitary sigma = perm_from_json(read_json(perm_path));
      AutOptions opt;
      opt.budget_m = budget;
      const auto aut = decide_automorphism(sigma, opt);
      if (aut.outcome == AutVerdict::Outcome::Undecided) {
        emit({{"schema", 1}, {"automorphism", aut_json(aut)}}, out_path);
        return kExitUndecided;
      }
      if (!aut.is_aut()) throw std::runtime_error("not an automorphism (" + std::string(to_string(aut.reason)) + ")");
      const auto orders = power_order(sigma, max_power, opt);
      emit({{"schema", 1}, {"aut_order", optional_int(orders.aut_order, max_power)},
            {"out_order", optional_int(orders.out_order, max_power)}},
           out_path);
      return 0;
    }
    if (trees->parsed()) {
      const auto shapes = shape_census(cn, ck);
      emit({{"schema", 1}, {"n", cn}, {"k", ck}, {"shapes", shapes_json(shapes)}}, out_path);
      return 0;
    }
    if (normal->parsed()) {
      if (expr_path.empty() == expr_text.empty()) throw std::runtime_error("give exactly one of --expr and --text");
      const std::string text = expr_path.empty() ? expr_text : read_text(expr_path);
      const int n = nn ? nn : infer_alphabet(text);
      const AlgebraElement a = parse_expression(n, text);
      if (as_json) std::cout << element_document(a).dump(2) << "\n";
      else std::cout << to_text(a) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
