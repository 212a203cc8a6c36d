#include "limitcopy/tree_fixture.hpp"

#include <algorithm>
#include <functional>

namespace limitcopy {

Nat PlainTree::node_count() const {
  Nat n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

void PlainTree::canonicalize() {
  for (auto& c : children) c.canonicalize();
  std::sort(children.begin(), children.end());
}

std::string PlainTree::serialize() const {
  std::string s = "(";
  for (const auto& c : children) s += c.serialize();
  s += ")";
  return s;
}

bool operator<(const PlainTree& a, const PlainTree& b) {
  return a.serialize() < b.serialize();
}

namespace {

bool match_children(const std::vector<PlainTree>& pats,
                    const std::vector<PlainTree>& hosts, Nat pi,
                    std::vector<bool>& used);

bool embeds_rec(const PlainTree& pattern, const PlainTree& host) {
  std::vector<bool> used(host.children.size(), false);
  return match_children(pattern.children, host.children, 0, used);
}

bool match_children(const std::vector<PlainTree>& pats,
                    const std::vector<PlainTree>& hosts, Nat pi,
                    std::vector<bool>& used) {
  if (pi == pats.size()) return true;
  for (Nat h = 0; h < hosts.size(); ++h) {
    if (used[h]) continue;
    if (embeds_rec(pats[pi], hosts[h])) {
      used[h] = true;
      if (match_children(pats, hosts, pi + 1, used)) return true;
      used[h] = false;
    }
  }
  return false;
}

}  // namespace

bool tree_embeds(const PlainTree& pattern, const PlainTree& host) {
  return embeds_rec(pattern, host);
}

void TreeFixture::validate() const {
  if (nodes.empty()) throw FixtureIncoherent("tree fixture: no root");
  if (nodes[0].parent != 0) throw FixtureIncoherent("tree fixture: root parent must be root");
  for (Nat v = 1; v < nodes.size(); ++v) {
    if (nodes[v].parent >= nodes.size())
      throw FixtureIncoherent("tree fixture: unknown parent");
    if (nodes[v].parent >= v)
      throw FixtureIncoherent("tree fixture: node must come after its predecessor");
    if (nodes[v].arrival < nodes[nodes[v].parent].arrival)
      throw FixtureIncoherent("tree fixture: node arrives before its predecessor");
    if (nodes[v].arrival < nodes[v - 1].arrival)
      throw FixtureIncoherent("tree fixture: arrival stages must be nondecreasing");
    if (nodes[v].infinite && !nodes[nodes[v].parent].infinite)
      throw FixtureIncoherent("tree fixture: infinite node below finite node");
  }
  for (Nat v = 0; v < nodes.size(); ++v) {
    if (!nodes[v].infinite) {
      // a finite node's declared subtree must be fully present by its reveal
      for (Nat w = v + 1; w < nodes.size(); ++w) {
        if (below(w, v) && nodes[w].arrival > nodes[v].reveal)
          throw FixtureIncoherent("tree fixture: finite subtree grows after reveal");
      }
    }
  }
}

Nat TreeFixture::count_at(Nat s) const {
  Nat n = 0;
  while (n < nodes.size() && nodes[n].arrival <= s) ++n;
  return n;
}

std::vector<Nat> TreeFixture::children_of(Nat v) const {
  std::vector<Nat> out;
  for (Nat w = 1; w < nodes.size(); ++w)
    if (nodes[w].parent == v) out.push_back(w);
  return out;
}

std::vector<Nat> TreeFixture::children_at(Nat v, Nat s) const {
  std::vector<Nat> out;
  for (Nat w = 1; w < nodes.size() && nodes[w].arrival <= s; ++w)
    if (nodes[w].parent == v) out.push_back(w);
  return out;
}

bool TreeFixture::below(Nat v, Nat anc) const {
  while (true) {
    if (v == anc) return true;
    if (v == 0) return false;
    v = nodes[v].parent;
  }
}

PlainTree TreeFixture::subtree_at(Nat v, Nat s) const {
  PlainTree t;
  for (Nat w : children_at(v, s)) t.children.push_back(subtree_at(w, s));
  t.canonicalize();
  return t;
}

PlainTree TreeFixture::true_subtree(Nat v) const {
  PlainTree t;
  for (Nat w : children_of(v)) t.children.push_back(true_subtree(w));
  t.canonicalize();
  return t;
}

bool TreeFixture::finite_revealed(Nat v, Nat s) const {
  const Node& n = nodes.at(v);
  return !n.infinite && s >= n.reveal;
}

}  // namespace limitcopy
