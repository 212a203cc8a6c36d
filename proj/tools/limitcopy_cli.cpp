// Command-line front end: scenario runner and enumeration dumps.
//
// Scenario files are line-oriented with sectioned blocks (FIXTURE, SCHEDULE,
// ORACLE, RUN), each closed by END.  See scenarios/ for worked examples.
//
// Exit codes: 0 verdict OK, 1 verdict FAIL, 2 usage or parse error,
// 3 incoherent fixture.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "limitcopy/btypes.hpp"
#include "limitcopy/builders.hpp"
#include "limitcopy/diffalg/typeenum.hpp"
#include "limitcopy/engine.hpp"

using namespace limitcopy;

namespace {

struct ParseFail : std::runtime_error {
  Nat line;
  ParseFail(Nat ln, const std::string& what)
      : std::runtime_error("line " + std::to_string(ln) + ": " + what), line(ln) {}
};

struct Scenario {
  std::optional<ClassTag> tag;
  std::shared_ptr<OrderFixture> ord;
  std::shared_ptr<TreeFixture> tree;
  std::shared_ptr<BAFixture> ba;
  std::shared_ptr<EquivStructure> eq;
  std::set<std::pair<Nat, Nat>> character;  // equivalence oracle pairs
  std::vector<Nat> arrivals;                // SCHEDULE, element id order
  std::string mode = "engine";
  Nat horizon = 100;
  Nat verify_prefix = 0;
  Nat seed = 0;
};

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

Nat parse_nat(const std::string& w, Nat ln) {
  try {
    size_t used = 0;
    unsigned long long v = std::stoull(w, &used);
    if (used != w.size()) throw std::invalid_argument(w);
    return v;
  } catch (const std::exception&) {
    throw ParseFail(ln, "expected a natural number, got '" + w + "'");
  }
}

Rat parse_key(const std::string& w, Nat ln) {
  auto slash = w.find('/');
  try {
    if (slash == std::string::npos) return Rat(boost::multiprecision::cpp_int(w));
    return Rat(boost::multiprecision::cpp_int(w.substr(0, slash)),
               boost::multiprecision::cpp_int(w.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseFail(ln, "expected a rational key, got '" + w + "'");
  }
}

BATerm parse_ba_term(const std::vector<std::string>& parts, Nat first, Nat atoms,
                     Nat regions, Nat ln) {
  BATerm t = BATerm::zero(regions);
  for (Nat i = first; i < parts.size(); ++i) {
    const std::string& w = parts[i];
    if (w == "zero") continue;
    if (w == "one") {
      t = join(t, BATerm::one(atoms, regions));
    } else if (w.size() >= 2 && w[0] == 'a') {
      Nat idx = parse_nat(w.substr(1), ln);
      if (idx >= atoms) throw ParseFail(ln, "atom index out of range: " + w);
      t = join(t, BATerm::atom(idx, regions));
    } else if (w[0] == 'r') {
      auto slash = w.find('/');
      if (slash == std::string::npos)
        throw ParseFail(ln, "region part needs r<i>/<path>: " + w);
      Nat idx = parse_nat(w.substr(1, slash - 1), ln);
      if (idx >= regions) throw ParseFail(ln, "region index out of range: " + w);
      std::string path = w.substr(slash + 1);
      for (char c : path)
        if (c != '0' && c != '1') throw ParseFail(ln, "region path is binary: " + w);
      t = join(t, BATerm::region_piece(idx, path, regions));
    } else {
      throw ParseFail(ln, "unknown term part '" + w + "'");
    }
  }
  return t;
}

Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  std::string raw, section;
  Nat ln = 0;
  std::vector<std::pair<Nat, Nat>> ba_reveals;  // applied after terms are read
  while (std::getline(in, raw)) {
    ++ln;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto parts = split_ws(raw);
    if (parts.empty()) continue;
    const std::string& head = parts[0];
    if (section.empty()) {
      if (head == "FIXTURE" || head == "SCHEDULE" || head == "ORACLE" || head == "RUN") {
        section = head;
        continue;
      }
      throw ParseFail(ln, "expected a section header, got '" + head + "'");
    }
    if (head == "END") {
      section.clear();
      continue;
    }
    if (section == "FIXTURE") {
      if (head == "class") {
        if (parts.size() != 2) throw ParseFail(ln, "class takes one word");
        const std::string& c = parts[1];
        if (c == "linear-order") {
          sc.tag = ClassTag::LinearOrder;
          sc.ord = std::make_shared<OrderFixture>();
        } else if (c == "boolean-algebra") {
          sc.tag = ClassTag::BooleanAlgebra;
          sc.ba = std::make_shared<BAFixture>();
        } else if (c == "tree") {
          sc.tag = ClassTag::Tree;
          sc.tree = std::make_shared<TreeFixture>();
        } else if (c == "equivalence") {
          sc.tag = ClassTag::EquivalenceStructure;
          sc.eq = std::make_shared<EquivStructure>();
        } else {
          throw ParseFail(ln, "unknown class '" + c + "'");
        }
      } else if (head == "bound" && sc.ord) {
        sc.ord->bound = parse_nat(parts.at(1), ln);
      } else if (head == "block" && sc.ord) {
        if (parts.size() != 3 && !(parts.size() == 5 && parts[3] == "reveal"))
          throw ParseFail(ln, "block <key> <size> [reveal <stage>]");
        OrderFixture::Block b;
        b.key = parse_key(parts[1], ln);
        b.size = parse_nat(parts[2], ln);
        if (parts.size() == 5) b.reveal = parse_nat(parts[4], ln);
        sc.ord->blocks.push_back(std::move(b));
      } else if (head == "elem" && sc.ord) {
        if (parts.size() != 3) throw ParseFail(ln, "elem <block> <offset>");
        sc.ord->elems.push_back({parse_nat(parts[1], ln), parse_nat(parts[2], ln)});
      } else if (head == "node" && sc.tree) {
        if (parts.size() != 3 && !(parts.size() == 5 && parts[3] == "reveal"))
          throw ParseFail(ln, "node <parent> <infinite|finite> [reveal <stage>]");
        TreeFixture::Node nd;
        nd.parent = parse_nat(parts[1], ln);
        if (parts[2] == "infinite") nd.infinite = true;
        else if (parts[2] == "finite") nd.infinite = false;
        else throw ParseFail(ln, "node finiteness is 'infinite' or 'finite'");
        if (parts.size() == 5) nd.reveal = parse_nat(parts[4], ln);
        sc.tree->nodes.push_back(nd);
      } else if (head == "atoms" && sc.ba) {
        sc.ba->num_atoms = parse_nat(parts.at(1), ln);
      } else if (head == "regions" && sc.ba) {
        sc.ba->num_regions = parse_nat(parts.at(1), ln);
      } else if (head == "term" && sc.ba) {
        sc.ba->elems.push_back(
            parse_ba_term(parts, 1, sc.ba->num_atoms, sc.ba->num_regions, ln));
      } else if (head == "split-reveal" && sc.ba) {
        if (parts.size() != 3) throw ParseFail(ln, "split-reveal <elem> <stage>");
        ba_reveals.emplace_back(parse_nat(parts[1], ln), parse_nat(parts[2], ln));
      } else if (head == "member" && sc.eq) {
        sc.eq->class_of.push_back(parse_nat(parts.at(1), ln));
      } else {
        throw ParseFail(ln, "unknown fixture directive '" + head + "'");
      }
    } else if (section == "SCHEDULE") {
      if (head != "arrive" || parts.size() != 2)
        throw ParseFail(ln, "schedule lines are 'arrive <stage>'");
      sc.arrivals.push_back(parse_nat(parts[1], ln));
    } else if (section == "ORACLE") {
      if (head == "pair" && parts.size() == 3)
        sc.character.emplace(parse_nat(parts[1], ln), parse_nat(parts[2], ln));
      else
        throw ParseFail(ln, "unknown oracle directive '" + head + "'");
    } else {  // RUN
      if (head == "mode" && parts.size() == 2) sc.mode = parts[1];
      else if (head == "horizon" && parts.size() == 2)
        sc.horizon = parse_nat(parts[1], ln);
      else if (head == "verify-prefix" && parts.size() == 2)
        sc.verify_prefix = parse_nat(parts[1], ln);
      else if (head == "seed" && parts.size() == 2) sc.seed = parse_nat(parts[1], ln);
      else throw ParseFail(ln, "unknown run directive '" + head + "'");
    }
  }
  if (!section.empty()) throw ParseFail(ln, "unterminated section " + section);
  if (!sc.tag) throw ParseFail(ln, "no fixture class declared");
  // distribute the schedule
  if (sc.ord) sc.ord->arrival = sc.arrivals;
  if (sc.ba) {
    sc.ba->arrival = sc.arrivals;
    for (auto [e, s] : ba_reveals) {
      if (sc.ba->split_reveal.size() < sc.ba->elems.size())
        sc.ba->split_reveal.resize(sc.ba->elems.size(), 0);
      if (e >= sc.ba->elems.size()) throw ParseFail(ln, "split-reveal of unknown element");
      sc.ba->split_reveal[e] = s;
    }
  }
  if (sc.tree) {
    if (sc.arrivals.size() != sc.tree->nodes.size())
      throw ParseFail(ln, "schedule length does not match node count");
    for (Nat v = 0; v < sc.arrivals.size(); ++v) sc.tree->nodes[v].arrival = sc.arrivals[v];
  }
  return sc;
}

// Brute-force prefix matching for equivalence copies: map the first k copy
// elements bijectively onto the first k fixture elements preserving ~.
std::optional<std::map<Nat, Nat>> equiv_prefix_match(const EquivStructure& copy,
                                                     const EquivStructure& fx, Nat k) {
  std::vector<Nat> img(k);
  std::vector<char> used(k, 0);
  std::map<Nat, Nat> f;
  std::function<bool(Nat)> go = [&](Nat b) -> bool {
    if (b == k) return true;
    for (Nat a = 0; a < k; ++a) {
      if (used[a]) continue;
      bool ok = true;
      for (Nat b2 = 0; b2 < b && ok; ++b2)
        ok = (copy.class_of[b] == copy.class_of[b2]) == (fx.class_of[a] == fx.class_of[img[b2]]);
      if (!ok) continue;
      img[b] = a;
      used[a] = 1;
      if (go(b + 1)) return true;
      used[a] = 0;
    }
    return false;
  };
  if (copy.class_of.size() < k || fx.class_of.size() < k) return std::nullopt;
  if (!go(0)) return std::nullopt;
  for (Nat b = 0; b < k; ++b) f[b] = img[b];
  return f;
}

int run_scenario(const Scenario& sc, std::ostream& trace) {
  Nat k = sc.verify_prefix;
  bool ok = false;
  if (sc.tag == ClassTag::EquivalenceStructure) {
    auto chr = constant_character(sc.character);
    auto copy = build_equivalence_copy(chr, sc.horizon);
    for (Nat i = 0; i < copy.class_of.size(); ++i)
      trace << "s=" << i << " act=emit cls=" << copy.class_of[i] << "\n";
    auto f = equiv_prefix_match(copy, *sc.eq, k);
    if (f) {
      auto B = Presentation::equivalence(std::make_shared<EquivStructure>(copy));
      auto A = Presentation::equivalence(sc.eq);
      ok = verify_prefix_isomorphism(B, A, *f, k);
    }
  } else if (sc.tag == ClassTag::LinearOrder && sc.mode == "engine") {
    sc.ord->validate();
    auto p = Presentation::linear_order(sc.ord);
    auto st = run_engine(p, fixture_labeling(p), sc.horizon);
    for (const auto& line : st.trace) trace << line << "\n";
    try {
      ok = verify_prefix_isomorphism(built_copy(st), p, st.current_map(), k);
    } catch (const InsufficientPrefix&) {
      ok = false;
    }
  } else {
    Presentation p = [&] {
      switch (*sc.tag) {
        case ClassTag::LinearOrder:
          sc.ord->validate();
          return Presentation::linear_order(sc.ord);
        case ClassTag::BooleanAlgebra:
          sc.ba->validate();
          return Presentation::boolean_algebra(sc.ba);
        default:
          sc.tree->validate();
          return Presentation::tree(sc.tree);
      }
    }();
    LabeledCopy lc = sc.tag == ClassTag::LinearOrder
                         ? ordering_build_labeled_copy(p, sc.horizon)
                         : sc.tag == ClassTag::BooleanAlgebra
                               ? ba_build_labeled_copy(p, sc.horizon)
                               : tree_build_labeled_copy(p, sc.horizon);
    for (const auto& line : lc.map_trace) trace << line << "\n";
    try {
      ok = verify_prefix_isomorphism(lc.copy, p, lc.f, k);
    } catch (const InsufficientPrefix&) {
      ok = false;
    }
  }
  trace << "PREFIX-ISO k=" << k << (ok ? " OK" : " FAIL") << "\n";
  return ok ? 0 : 1;
}

std::string format_code(const B1TypeCode& t) {
  std::ostringstream os;
  switch (t.tag) {
    case ClassTag::LinearOrder: {
      os << "sizes=[";
      for (Nat i = 0; i < t.ord().sizes.size(); ++i)
        os << (i ? "," : "") << t.ord().sizes[i].str();
      os << "]";
      break;
    }
    case ClassTag::BooleanAlgebra: {
      os << "len=" << t.ba().tuple_len << " cells={";
      bool first = true;
      for (const auto& [mask, sz] : t.ba().cells) {
        os << (first ? "" : ",") << mask << ":" << sz.str();
        first = false;
      }
      os << "}";
      break;
    }
    case ClassTag::Tree: {
      const auto& tc = t.tree();
      os << "nodes=" << tc.parent.size() << " labels=[";
      for (Nat v = 0; v < tc.labels.size(); ++v) {
        os << (v ? "," : "");
        if (tc.labels[v].infinite) os << "inf";
        else os << tc.labels[v].finite_tree.serialize();
      }
      os << "] marks=[";
      for (Nat v = 0; v < tc.marks.size(); ++v) os << (v ? "," : "") << tc.marks[v];
      os << "]";
      break;
    }
    default:
      break;
  }
  return os.str();
}

int enumerate_class(const std::string& cls, Nat max_index, std::ostream& out) {
  ClassTag tag;
  if (cls == "linear-order") tag = ClassTag::LinearOrder;
  else if (cls == "boolean-algebra") tag = ClassTag::BooleanAlgebra;
  else if (cls == "tree") tag = ClassTag::Tree;
  else {
    std::cerr << "unknown class '" << cls << "'\n";
    return 2;
  }
  for (const Index& i : enumerate_valid_indices(tag, max_index))
    out << "i=" << i << " " << format_code(decode_type(tag, i)) << "\n";
  return 0;
}

int enumerate_dcf0(Nat n, Nat budget, Nat tuple_bound, Nat universe, std::ostream& out) {
  auto entries =
      enumerate_types_n(n, budget, std::make_shared<AlgebraicDecider>(), tuple_bound, universe);
  for (const auto& e : entries) {
    out << "tuple=[";
    for (Nat i = 0; i < e.tuple.size(); ++i)
      out << (i ? "; " : "") << formal_poly_str(e.tuple[i]);
    out << "]";
    if (e.inconsistent) out << " status=inconsistent";
    else if (e.stalled)
      out << " status=stalled coord=" << e.stalled_coord << " query=" << e.stall_query;
    else out << " status=ok";
    out << " fields=[";
    for (Nat i = 0; i < e.fields.size(); ++i)
      out << (i ? "," : "") << e.fields[i]->size();
    out << "] answers=[";
    for (Nat i = 0; i < e.types.size(); ++i)
      out << (i ? "," : "") << e.types[i]->committed().size();
    out << "]\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale limit-copy constructions"};
  app.require_subcommand(1);

  std::string scenario_path, trace_out, cls = "linear-order";
  std::optional<Nat> stages_flag, prefix_flag;
  Nat max_index = 10, dn = 1, budget = 300, tuple_bound = 14, universe = 6;

  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", scenario_path, "scenario file")->required();
  run->add_option("--stages", stages_flag, "override the horizon");
  run->add_option("--verify-prefix", prefix_flag, "override the verified prefix");
  run->add_option("--trace-out", trace_out, "write the trace to a file");

  auto* en = app.add_subcommand("enumerate", "dump type enumerations");
  en->add_option("what", cls, "linear-order | boolean-algebra | tree | dcf0")->required();
  en->add_option("--max-index", max_index, "how many valid indices to list");
  en->add_option("--n", dn, "dcf0 tuple length");
  en->add_option("--budget", budget, "dcf0 decider/search budget");
  en->add_option("--tuple-bound", tuple_bound, "dcf0 tuple size bound");
  en->add_option("--universe", universe, "dcf0 universe bound per field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      std::ifstream in(scenario_path);
      if (!in) {
        std::cerr << "cannot open " << scenario_path << "\n";
        return 2;
      }
      Scenario sc = parse_scenario(in);
      if (stages_flag) sc.horizon = *stages_flag;
      if (prefix_flag) sc.verify_prefix = *prefix_flag;
      if (!trace_out.empty()) {
        std::ofstream out(trace_out);
        if (!out) {
          std::cerr << "cannot open " << trace_out << "\n";
          return 2;
        }
        return run_scenario(sc, out);
      }
      return run_scenario(sc, std::cout);
    }
    if (cls == "dcf0") return enumerate_dcf0(dn, budget, tuple_bound, universe, std::cout);
    return enumerate_class(cls, max_index, std::cout);
  } catch (const ParseFail& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const FixtureIncoherent& e) {
    std::cerr << "fixture incoherent: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
