// Command-line front end.  Exit codes: 0 ok, 1 usage/parse/IO error,
// 2 cap exceeded, 3 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plurichrome/encodings.hpp"
#include "plurichrome/hypertree.hpp"
#include "plurichrome/ncalg.hpp"
#include "plurichrome/plurigraph.hpp"
#include "plurichrome/scheduling.hpp"
#include "plurichrome/verify.hpp"

namespace pc = plurichrome;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCap = 2;
constexpr int kVerifyFailed = 3;

constexpr int kCycleVertexCap = 10;

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw io_error("cannot write " + path);
}

// One term per line -> all terms on one line separated by two spaces.
std::string one_line(const std::string& text) {
  std::string out, line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!out.empty()) out += "  ";
    out += line;
  }
  return out + "\n";
}

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (int x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

struct CsfArgs {
  std::string in;
  std::string method = "powersum";
  std::string basis;
  std::optional<long long> poly;
};

int run_csf(const CsfArgs& a, bool allow_large) {
  const auto g = pc::parse_plurigraph(read_file(a.in));
  pc::NCSymExpr y(g.size(), pc::NCBasis::powersum);
  if (a.method == "enum") {
    y = pc::chromatic_ncsym_enum(g, allow_large);
  } else if (a.method == "delcon") {
    if (g.num_pluriedges() > static_cast<std::size_t>(pc::kPowersumPluriedgeCap) && !allow_large)
      throw pc::cap_exceeded("deletion-contraction capped at " + std::to_string(pc::kPowersumPluriedgeCap) + " pluriedges");
    y = pc::chromatic_ncsym_delcon(g);
  } else {
    y = pc::chromatic_ncsym_powersum(g, allow_large);
  }
  if (a.poly) {
    std::cout << pc::eval_principal(y, *a.poly) << "\n";
    return kOk;
  }
  if (a.basis == "m") y = pc::to_monomial(y);
  if (a.basis == "p") y = pc::to_powersum(y);
  std::cout << one_line(pc::to_string(y));
  return kOk;
}

struct NcsymArgs {
  std::string in;
  std::string to;
  std::vector<int> induct;
  std::vector<int> permute;
  std::optional<long long> eval;
};

int run_ncsym(const NcsymArgs& a) {
  pc::Expression e = pc::parse_expression(read_file(a.in));
  if (!a.to.empty()) {
    if (a.to == "m" || a.to == "p" || a.to == "M") {
      const auto* x = std::get_if<pc::NCSymExpr>(&e);
      if (!x) throw pc::invalid_input("--to " + a.to + " needs an m[...] or p[...] expression");
      if (a.to == "m") e = pc::to_monomial(*x);
      if (a.to == "p") e = pc::to_powersum(*x);
      if (a.to == "M") e = pc::ncsym_to_ncqsym(pc::to_monomial(*x));
    } else {
      const auto* x = std::get_if<pc::NCSymExpr>(&e);
      if (!x) throw pc::invalid_input("--to P needs an m[...] or p[...] expression");
      e = pc::commutative_image(pc::to_powersum(*x));
    }
  }
  if (!a.permute.empty()) {
    if (auto* x = std::get_if<pc::NCSymExpr>(&e)) {
      e = pc::permute(*x, a.permute);
    } else if (auto* q = std::get_if<pc::NCQSymExpr>(&e)) {
      e = pc::permute(*q, a.permute);
    } else {
      throw pc::invalid_input("--permute needs a noncommutative expression");
    }
  }
  if (!a.induct.empty()) {
    if (auto* x = std::get_if<pc::NCSymExpr>(&e)) {
      e = pc::induct(*x, a.induct);
    } else if (auto* q = std::get_if<pc::NCQSymExpr>(&e)) {
      e = pc::induct(*q, a.induct);
    } else {
      throw pc::invalid_input("--induct needs a noncommutative expression");
    }
  }
  if (a.eval) {
    std::cout << std::visit([&](const auto& x) { return pc::eval_principal(x, *a.eval); }, e) << "\n";
    return kOk;
  }
  std::cout << one_line(pc::to_string(e));
  return kOk;
}

struct SchedArgs {
  std::string expr;
  int n = 0;
  bool delcon = false;
};

int run_sched(const SchedArgs& a, bool allow_large) {
  const auto s = pc::parse_formula(a.expr, a.n);
  const auto q = a.delcon ? pc::scheduling_ncqsym_delcon(s, allow_large) : pc::scheduling_ncqsym(s, allow_large);
  std::cout << one_line(pc::to_string(q));
  return kOk;
}

struct EncodeArgs {
  std::string kind;
  std::string in;
  std::string out;
  std::string mode = "clique";
  int s = 1;
  bool verbatim = false;
  int max_cycle_length = 0;
};

int run_encode(const EncodeArgs& a, bool allow_large) {
  const std::string text = read_file(a.in);
  const auto mode = a.mode == "path" ? pc::HyperedgeMode::path : pc::HyperedgeMode::clique;
  pc::Plurigraph g;
  if (a.kind == "graph") {
    g = pc::graph_to_plurigraph(pc::parse_graph(text));
  } else if (a.kind == "hypergraph") {
    g = pc::hypergraph_to_plurigraph(pc::parse_hypergraph(text), mode);
  } else if (a.kind == "complex") {
    g = pc::hypergraph_to_plurigraph(pc::complex_to_hypergraph(pc::parse_complex(text), a.s), mode);
  } else if (a.kind == "oriented") {
    g = pc::oriented_to_plurigraph(pc::parse_oriented_graph(text), a.verbatim);
  } else {
    const auto graph = pc::parse_graph(text);
    if (a.kind == "acyclic") {
      if (graph.size() > kCycleVertexCap && a.max_cycle_length == 0 && !allow_large)
        throw pc::cap_exceeded("even-cycle enumeration capped at " + std::to_string(kCycleVertexCap) +
                               " vertices; pass --max-cycle-length or --allow-large");
      g = pc::acyclic_to_plurigraph(graph, a.max_cycle_length);
    } else {
      g = pc::star_to_plurigraph(graph);
    }
  }
  write_file(a.out, pc::to_string(g));
  std::cout << "wrote " << a.out << ": " << g.size() << " vertices, " << g.num_pluriedges() << " pluriedges\n";
  return kOk;
}

struct HypertreeArgs {
  std::string in;
  bool csf = false;
  bool degrees = false;
  bool check = false;
};

int run_hypertree(const HypertreeArgs& a, bool allow_large) {
  const auto h = pc::parse_hypergraph(read_file(a.in));
  if (a.csf) {
    std::cout << one_line(pc::to_string(pc::csf(h, allow_large)));
    return kOk;
  }
  if (a.degrees) {
    const auto direct = pc::degree_sequence(h);
    std::cout << "degree sequence: " << join(direct) << "\n";
    if (h.num_edges() == 0 || !pc::is_hypertree(h)) return kOk;
    const int s = static_cast<int>(h.edges().front().size());
    if (!h.is_uniform(s)) return kOk;
    const auto recovered = pc::degree_sequence_from_csf(pc::csf(h, allow_large), s);
    std::cout << "from csf:        " << join(recovered) << "\n";
    return recovered == direct ? kOk : kVerifyFailed;
  }
  const auto t = pc::two_of_three(h);
  std::cout << "vertices: " << h.size() << "\n"
            << "hyperedges: " << h.num_edges() << "\n"
            << "connected: " << yes_no(t.connected) << "\n"
            << "acyclic: " << yes_no(t.acyclic) << "\n"
            << "hyperedge magnitude: " << pc::hyperedge_magnitude(h) << " (n - 1 = " << h.size() - 1 << ")\n"
            << "linear: " << yes_no(pc::is_linear(h)) << "\n"
            << "hypertree: " << yes_no(pc::is_hypertree(h)) << "\n";
  return kOk;
}

int run_verify_examples() {
  const auto checks = pc::verify_examples();
  std::size_t passed = 0;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << "\n";
    passed += c.passed;
  }
  std::cout << passed << "/" << checks.size() << " checks passed\n";
  return passed == checks.size() ? kOk : kVerifyFailed;
}

int run_search_collisions(int s, int max_n, bool allow_large) {
  const auto rep = pc::search_collisions(s, max_n, allow_large);
  for (const auto& [n, count] : rep.classes) std::cout << "n=" << n << " classes=" << count << "\n";
  std::cout << "collisions: " << rep.collisions.size() << "\n";
  for (const auto& [a, b] : rep.collisions) std::cout << "---\n" << pc::to_string(a) << "+++\n" << pc::to_string(b);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plurichrome: chromatic functions of plurigraphs, scheduling problems, and hypertrees"};
  app.require_subcommand(1);
  bool allow_large = false;
  auto add_allow_large = [&](CLI::App* sub) { sub->add_flag("--allow-large", allow_large, "lift the enumeration caps"); };

  CsfArgs csf_args;
  auto* csf = app.add_subcommand("csf", "chromatic nc-symmetric function Y_G of a plurigraph file");
  csf->add_option("--in", csf_args.in, "plurigraph file")->required();
  csf->add_option("--method", csf_args.method, "enum, powersum, or delcon")->check(CLI::IsMember({"enum", "powersum", "delcon"}));
  csf->add_option("--basis", csf_args.basis, "output basis m or p (default: the method's own)")->check(CLI::IsMember({"m", "p"}));
  csf->add_option("--poly", csf_args.poly, "print the number of proper colorings with k colors instead")->check(CLI::NonNegativeNumber);
  add_allow_large(csf);

  NcsymArgs ncsym_args;
  auto* ncsym = app.add_subcommand("ncsym", "basis conversion, permutation, and induction on an expression file");
  ncsym->add_option("--in", ncsym_args.in, "expression file")->required();
  ncsym->add_option("--to", ncsym_args.to, "m, p, M (nc-quasisymmetric monomial), or P (commutative powersum)")
      ->check(CLI::IsMember({"m", "p", "M", "P"}));
  ncsym->add_option("--permute", ncsym_args.permute, "permutation d1,d2,...,dn applied to indices")->delimiter(',');
  ncsym->add_option("--induct", ncsym_args.induct, "induction sequence r1,r2,...")->delimiter(',');
  ncsym->add_option("--eval", ncsym_args.eval, "print the principal specialization at k instead")->check(CLI::NonNegativeNumber);

  SchedArgs sched_args;
  auto* sched = app.add_subcommand("sched", "scheduling nc-quasisymmetric function of a formula");
  sched->add_option("--expr", sched_args.expr, "formula over atoms (xi <= xj), (xi < xj), (xi = xj), (xi != xj)")->required();
  sched->add_option("--n", sched_args.n, "number of variables (default: largest index)")->check(CLI::NonNegativeNumber);
  sched->add_flag("--delcon", sched_args.delcon, "use iterated deletion-contraction (graph-like formulas)");
  add_allow_large(sched);

  EncodeArgs encode_args;
  auto* encode = app.add_subcommand("encode", "write the plurigraph encoding of a coloring problem");
  encode->add_option("--kind", encode_args.kind, "input kind")
      ->required()
      ->check(CLI::IsMember({"graph", "hypergraph", "complex", "oriented", "acyclic", "star"}));
  encode->add_option("--in", encode_args.in, "input file")->required();
  encode->add_option("--out", encode_args.out, "output plurigraph file")->required();
  encode->add_option("--mode", encode_args.mode, "hyperedge pluriedges: clique or path")->check(CLI::IsMember({"clique", "path"}));
  encode->add_option("--s", encode_args.s, "simplex dimension for --kind complex")->check(CLI::PositiveNumber);
  encode->add_flag("--verbatim", encode_args.verbatim, "oriented: also pair each arc with itself");
  encode->add_option("--max-cycle-length", encode_args.max_cycle_length, "acyclic: longest even cycle considered (0 = all)")
      ->check(CLI::NonNegativeNumber);
  add_allow_large(encode);

  HypertreeArgs ht_args;
  auto* hypertree = app.add_subcommand("hypertree", "structure, csf, and degree sequence of a hypergraph file");
  hypertree->add_option("--in", ht_args.in, "hypergraph file")->required();
  auto* o_csf = hypertree->add_flag("--csf", ht_args.csf, "print the chromatic symmetric function");
  auto* o_deg = hypertree->add_flag("--degrees", ht_args.degrees, "print the degree sequence and its recovery from the csf");
  auto* o_check = hypertree->add_flag("--check", ht_args.check, "report connectivity, cycles, and magnitude");
  o_csf->excludes(o_deg, o_check);
  o_deg->excludes(o_check);
  add_allow_large(hypertree);

  auto* verify = app.add_subcommand("verify-paper", "check the worked examples and the hypertree identities");

  int coll_s = 3, coll_max_n = 0;
  auto* collisions = app.add_subcommand("search-collisions", "look for non-isomorphic uniform hypertrees with equal csf");
  collisions->add_option("--s", coll_s, "hyperedge size")->check(CLI::Range(2, 64));
  collisions->add_option("--max-n", coll_max_n, "largest vertex count")->required()->check(CLI::PositiveNumber);
  add_allow_large(collisions);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (csf->parsed()) return run_csf(csf_args, allow_large);
    if (ncsym->parsed()) return run_ncsym(ncsym_args);
    if (sched->parsed()) return run_sched(sched_args, allow_large);
    if (encode->parsed()) return run_encode(encode_args, allow_large);
    if (hypertree->parsed()) {
      if (!ht_args.csf && !ht_args.degrees && !ht_args.check) {
        std::cerr << "hypertree: one of --csf, --degrees, --check is required\n";
        return kUsage;
      }
      return run_hypertree(ht_args, allow_large);
    }
    if (verify->parsed()) return run_verify_examples();
    if (collisions->parsed()) return run_search_collisions(coll_s, coll_max_n, allow_large);
  } catch (const pc::cap_exceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << " (use --allow-large to override)\n";
    return kCap;
  } catch (const pc::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
