#include "limitcopy/builders.hpp"

#include <algorithm>
#include <memory>

namespace limitcopy {

namespace {

constexpr Nat kStableWindow = 10;
constexpr Nat kLookAhead = 50;

std::string stage_line(Nat s, const std::string& rest) {
  return "s=" + std::to_string(s) + " " + rest;
}

}  // namespace

std::optional<BufferPair> find_buffer_pair(const Presentation& p, Nat c, Nat cp, Nat s) {
  if (p.tag() != ClassTag::LinearOrder)
    throw UnsupportedFormula("buffer pairs only exist for linear orders");
  const auto& fx = p.order();
  if (!fx.enumerated(c, s) || !fx.enumerated(cp, s))
    throw UnknownElement("buffer pair endpoints not enumerated");
  if (!fx.less(c, cp)) return std::nullopt;
  Nat n = fx.count_at(s);
  Index limit = Index(n) * Index(n) * 2 + 2 * n + 2;
  for (Index code = 0; code < limit; ++code) {
    Index zi, zpi;
    unpair_index(code, zi, zpi);
    if (zi >= n || zpi >= n) continue;
    Nat z = static_cast<Nat>(zi), zp = static_cast<Nat>(zpi);
    if (!(fx.less(c, z) && fx.less(z, zp) && fx.less(zp, cp))) continue;
    if (interval_label_guess(fx, c, z, s).is_infinite() &&
        interval_label_guess(fx, z, zp, s).is_infinite() &&
        interval_label_guess(fx, zp, cp, s).is_infinite())
      return BufferPair{z, zp};
  }
  return std::nullopt;
}

LabeledCopy ordering_build_labeled_copy(const Presentation& p, Nat horizon) {
  if (p.tag() != ClassTag::LinearOrder)
    throw UnsupportedFormula("ordering builder needs a linear-order presentation");
  if (horizon == 0) throw InvalidHorizon();
  const auto& fx = p.order();
  auto labeler = fixture_labeling(p);

  ConstructionState st;
  std::map<Nat, Nat> entry_stage;  // b -> stage its current image was set
  std::map<Nat, Nat> prev_img;
  std::map<Nat, Nat> committed;  // b -> image a, committing a's block label
  std::map<Nat, Nat> commit_stage;

  for (Nat s = 0; s < horizon; ++s) {
    st = engine_step(std::move(st), p, labeler, s);
    auto m = st.current_map();
    for (const auto& [b, a] : m) {
      auto it = prev_img.find(b);
      if (it == prev_img.end() || it->second != a) entry_stage[b] = s;
    }
    prev_img = m;

    for (const auto& [b, a0] : committed) {
      auto it = m.find(b);
      if (it != m.end() && it->second != a0)
        throw FixtureIncoherent("ordering builder: committed label retracted");
    }

    for (const auto& [b, a] : m) {
      if (committed.count(b)) continue;
      Nat blk = fx.elems[a].block;
      if (fx.blocks[blk].reveal > s) continue;
      if (entry_stage[b] + kStableWindow > s) continue;
      committed[b] = a;
      commit_stage[b] = s;
      st.trace.push_back(stage_line(
          s, "act=commit-label b=" + std::to_string(b) +
                 " size=" + std::to_string(fx.blocks[blk].size)));
      // protect the block: buffer pair right of its greatest enumerated element
      Nat hi = a;
      std::optional<Nat> nxt;
      for (Nat e = 0; e < fx.count_at(s); ++e) {
        if (fx.same_block(a, e) && fx.less(hi, e)) hi = e;
      }
      for (Nat e = 0; e < fx.count_at(s); ++e) {
        if (fx.less(hi, e) && !fx.same_block(a, e) && (!nxt || fx.less(e, *nxt)))
          nxt = e;
      }
      if (nxt) {
        if (auto bp = find_buffer_pair(p, hi, *nxt, s)) {
          st.trace.push_back(stage_line(s, "act=buffer z=" + std::to_string(bp->z) +
                                               " zp=" + std::to_string(bp->zp)));
        } else {
          st.trace.push_back(stage_line(s, "act=buffer-notyet"));
        }
      }
    }
  }

  // assemble the copy: committed same-block images fold into shared blocks
  auto bf = std::make_shared<OrderFixture>();
  std::map<Nat, Nat> ablock_to_bblock;
  auto m = st.current_map();
  for (Nat b = 0; b < st.b_count; ++b) {
    auto it = committed.find(b);
    if (it != committed.end()) {
      Nat a = it->second;
      Nat blk = fx.elems[a].block;
      auto bit = ablock_to_bblock.find(blk);
      Nat bb;
      if (bit == ablock_to_bblock.end()) {
        bb = bf->blocks.size();
        bf->blocks.push_back({st.b_key[b], fx.blocks[blk].size, commit_stage[b]});
        ablock_to_bblock[blk] = bb;
      } else {
        bb = bit->second;
        bf->blocks[bb].reveal = std::max(bf->blocks[bb].reveal, commit_stage[b]);
      }
      bf->elems.push_back({bb, fx.elems[a].offset});
    } else {
      Nat bb = bf->blocks.size();
      bf->blocks.push_back({st.b_key[b], 1, 0});
      bf->elems.push_back({bb, 0});
    }
    bf->arrival.push_back(st.b_created[b]);
  }
  bf->validate();

  LabeledCopy out;
  out.copy = Presentation::linear_order(bf);
  out.labeling = fixture_labeling(out.copy);
  out.f = std::move(m);
  out.map_trace = std::move(st.trace);
  out.injuries = std::move(st.injury_log);
  return out;
}

LabeledCopy ba_build_labeled_copy(const Presentation& p, Nat horizon) {
  if (p.tag() != ClassTag::BooleanAlgebra)
    throw UnsupportedFormula("ba builder needs a boolean-algebra presentation");
  if (horizon == 0) throw InvalidHorizon();
  const auto& fx = p.ba();

  std::map<Nat, SizeGuess> committed;
  std::map<Nat, Nat> commit_stage;
  std::map<Nat, SizeGuess> prev;
  std::map<Nat, Nat> last_change;
  std::vector<std::string> tr;
  std::vector<ConstructionState::Injury> injuries;

  auto rollback_above = [&](Nat e, Nat s, const std::string& why) {
    injuries.push_back({s, e, why});
    tr.push_back(stage_line(s, "act=rollback req=" + std::to_string(e) + " injury=" + why));
    for (auto it = committed.begin(); it != committed.end();) {
      if (it->first >= e) {
        commit_stage.erase(it->first);
        it = committed.erase(it);
      } else {
        ++it;
      }
    }
  };

  for (Nat s = 0; s < horizon; ++s) {
    Nat n = fx.count_at(s);
    for (Nat e = 0; e < n; ++e) {
      SizeGuess g = ba_element_size(fx, e, s);
      auto pit = prev.find(e);
      if (pit == prev.end() || pit->second != g) {
        last_change[e] = s;
        prev[e] = g;
      }
      if (fx.arrival[e] == s) {
        tr.push_back(stage_line(s, "act=extend b=" + std::to_string(e)));
        if (g.is_infinite()) {
          // look ahead: either the infinity guess is refuted or an earlier
          // element differing from e by finitely many atoms turns up
          bool settled = false;
          for (Nat t = s; t < std::min(horizon, s + kLookAhead) && !settled; ++t) {
            SizeGuess gt = ba_element_size(fx, e, t);
            if (!gt.is_infinite()) {
              tr.push_back(stage_line(t, "act=lookahead-refuted b=" + std::to_string(e)));
              rollback_above(e, t, "lookahead-refutation");
              settled = true;
              break;
            }
            // a qualifying alpha_1: believed infinite, differing from e by
            // finitely many atoms, each already seen as an atom
            for (Nat e1 = 0; e1 < e && !settled; ++e1) {
              if (!ba_element_size(fx, e1, t).is_infinite()) continue;
              const BATerm& x = fx.elems[e];
              const BATerm& y = fx.elems[e1];
              BATerm diff = join(meet(x, y.complement_in(fx.one())),
                                 meet(y, x.complement_in(fx.one())));
              if (diff.size().is_infinite()) continue;
              bool atoms_seen = true;
              for (Nat bit = 0; bit < fx.num_atoms && atoms_seen; ++bit) {
                if (!(diff.atoms & (std::uint64_t(1) << bit))) continue;
                bool found = false;
                for (Nat e2 = 0; e2 < fx.elems.size() && fx.arrival[e2] <= t; ++e2)
                  if (fx.elems[e2] == BATerm::atom(bit, fx.num_regions) &&
                      ba_atom_guess(fx, e2, t) == AtomGuess::Atom)
                    found = true;
                atoms_seen = found;
              }
              if (!atoms_seen) continue;
              tr.push_back(stage_line(t, "act=lookahead-found b=" + std::to_string(e) +
                                             " via=" + std::to_string(e1)));
              settled = true;
            }
          }
          if (!settled)
            tr.push_back(stage_line(s, "act=lookahead-exhausted b=" + std::to_string(e)));
        }
      }
      auto cit = committed.find(e);
      if (cit != committed.end()) {
        if (cit->second != g) rollback_above(e, s, "label-refuted");
        continue;
      }
      if (s >= last_change[e] + kStableWindow) {
        committed[e] = g;
        commit_stage[e] = s;
        tr.push_back(stage_line(s, "act=commit-label b=" + std::to_string(e) +
                                       " size=" + g.str()));
      }
    }
  }

  Nat n = fx.count_at(horizon - 1);
  auto bf = std::make_shared<BAFixture>();
  bf->num_atoms = fx.num_atoms;
  bf->num_regions = fx.num_regions;
  for (Nat e = 0; e < n; ++e) {
    bf->elems.push_back(fx.elems[e]);
    bf->arrival.push_back(fx.arrival[e]);
    bf->split_reveal.push_back(fx.reveal_of(e));
  }
  bf->validate();

  LabeledCopy out;
  out.copy = Presentation::boolean_algebra(bf);
  out.labeling = fixture_labeling(out.copy);
  for (Nat e = 0; e < n; ++e) out.f[e] = e;
  out.map_trace = std::move(tr);
  out.injuries = std::move(injuries);
  return out;
}

namespace {

struct BNode {
  Nat parent = 0;
  bool inf_label = true;
  PlainTree shape;  // meaningful when !inf_label
  Nat created = 0;
  Nat commit_stage = 0;  // stage the finite label was committed
  std::optional<Nat> image;
};

}  // namespace

LabeledCopy tree_build_labeled_copy(const Presentation& p, Nat horizon) {
  if (p.tag() != ClassTag::Tree)
    throw UnsupportedFormula("tree builder needs a tree presentation");
  if (horizon == 0) throw InvalidHorizon();
  const auto& fx = p.tree_fx();

  std::vector<BNode> bn;
  std::vector<std::vector<Nat>> bchildren;
  std::map<Nat, Nat> a2b;
  std::vector<std::string> tr;
  std::vector<ConstructionState::Injury> injuries;

  auto create = [&](Nat parent_b, bool inf, PlainTree shape, Nat s,
                    std::optional<Nat> img) {
    Nat b = bn.size();
    bn.push_back({parent_b, inf, std::move(shape), s, s, img});
    bchildren.push_back({});
    if (b != parent_b) bchildren[parent_b].push_back(b);
    if (img) a2b[*img] = b;
    return b;
  };

  auto collect_subtree = [&](Nat root) {
    std::vector<Nat> out = {root};
    for (Nat i = 0; i < out.size(); ++i)
      for (Nat c : bchildren[out[i]]) out.push_back(c);
    return out;
  };

  // mirror the (fully known) finite subtree of a with finite labels
  std::function<Nat(Nat, Nat, Nat)> mirror_finite = [&](Nat a, Nat parent_b, Nat s) {
    PlainTree shape = fx.true_subtree(a);
    shape.canonicalize();
    Nat b = create(parent_b, false, shape, s, a);
    tr.push_back(stage_line(s, "act=commit-label b=" + std::to_string(b) +
                                   " shape=" + bn[b].shape.serialize()));
    for (Nat c : fx.children_of(a)) mirror_finite(c, b, s);
    return b;
  };

  for (Nat s = 0; s < horizon; ++s) {
    // arrivals first, then reveals of the same stage
    Nat n = fx.count_at(s);
    for (Nat a = 0; a < n; ++a) {
      if (fx.nodes[a].arrival != s) continue;
      bool guess_fin = fx.finite_revealed(a, s);
      if (a == 0) {
        create(0, !guess_fin ? true : false, {}, s, a);
        if (guess_fin) bn[0].shape = fx.true_subtree(0);
        tr.push_back(stage_line(s, "act=extend b=0"));
        continue;
      }
      Nat bq = a2b.at(fx.nodes[a].parent);
      if (!bn[bq].inf_label) guess_fin = true;  // subtree of a finite node is known
      if (!guess_fin) {
        // adopt a pending retargeted sibling if one waits here
        std::optional<Nat> ghost;
        for (Nat c : bchildren[bq])
          if (!bn[c].image && bn[c].inf_label && (!ghost || c < *ghost)) ghost = c;
        if (ghost) {
          bn[*ghost].image = a;
          a2b[a] = *ghost;
          tr.push_back(stage_line(s, "act=retarget b=" + std::to_string(*ghost) +
                                         " to=" + std::to_string(a)));
          continue;
        }
        create(bq, true, {}, s, a);
        tr.push_back(stage_line(s, "act=extend b=" + std::to_string(bn.size() - 1)));
      } else {
        mirror_finite(a, bq, s);
      }
    }
    // reveals: a mapped node whose infinity label is refuted loses its b
    for (Nat a = 0; a < n; ++a) {
      auto it = a2b.find(a);
      if (it == a2b.end()) continue;
      Nat g = it->second;
      if (!bn[g].inf_label || !fx.finite_revealed(a, s)) continue;
      injuries.push_back({s, g, "subtree-finite"});
      tr.push_back(stage_line(s, "act=retarget b=" + std::to_string(g) +
                                     " injury=subtree-finite"));
      for (Nat d : collect_subtree(g)) {
        if (bn[d].image) {
          a2b.erase(*bn[d].image);
          bn[d].image.reset();
        }
      }
      mirror_finite(a, bn[g].parent, s);
    }
  }

  // assemble the copy; a finite label's reveal is when its subtree is complete
  auto tf = std::make_shared<TreeFixture>();
  for (Nat b = 0; b < bn.size(); ++b)
    tf->nodes.push_back({bn[b].parent, bn[b].inf_label, bn[b].created, 0});
  for (Nat b = bn.size(); b-- > 0;) {
    if (bn[b].inf_label) continue;
    Nat r = bn[b].created;
    for (Nat d : collect_subtree(b)) r = std::max(r, bn[d].created);
    tf->nodes[b].reveal = std::max(r, bn[b].commit_stage);
  }
  tf->validate();

  LabeledCopy out;
  out.copy = Presentation::tree(tf);
  out.labeling = fixture_labeling(out.copy);
  for (const auto& [a, b] : a2b) out.f[b] = a;
  out.map_trace = std::move(tr);
  out.injuries = std::move(injuries);
  return out;
}

}  // namespace limitcopy
