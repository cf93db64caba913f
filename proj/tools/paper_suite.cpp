#include "suite.hpp"

#include "equivar/burnside.hpp"
#include "equivar/gsets.hpp"
#include "equivar/tambara.hpp"
#include "equivar/witt.hpp"

#include <numeric>

namespace equivar::suite {

namespace {

bool fail(std::string& d, const std::string& msg) {
  d = msg;
  return false;
}

SparseVec e(int j) { return SparseVec{{j, Int(1)}}; }

std::string ps(int p) { return "p=" + std::to_string(p) + ": "; }

BurnsideElement cls(const GroupPtr& g, int top, int k) { return BurnsideElement::basis(BurnsideRing::get(g, top), k); }

bool double_cosets(std::string& d) {
  for (int p : {3, 5, 7}) {
    auto g = Group::dihedral(p);
    int h = reflection_d2(g);
    if (static_cast<int>(g->double_coset_reps(g->whole(), h, h).size()) != (p + 1) / 2) return fail(d, ps(p) + "wrong count");
  }
  return true;
}

bool rotated_reflection(std::string& d) {
  for (int m : {3, 5, 9}) {
    auto g = Group::dihedral(m);
    int z = g->dihedral_index((m + 1) / 2, 0);  // a square root of zeta_m
    if (g->conj(z, reflection_d2(g)) != g->generated({g->mul(g->zeta(), g->tau())}))
      return fail(d, "m=" + std::to_string(m));
  }
  return true;
}

bool weyl_of_rotations(std::string& d) {
  for (int m : {3, 5, 9}) {
    auto g = Group::dihedral(m);
    auto w = g->weyl_group(dihedral_rotation_subgroup(*g, m));
    if (w->order() != 2) return fail(d, "m=" + std::to_string(m) + ": order " + std::to_string(w->order()));
  }
  return true;
}

bool restriction_of_rotation_cosets(std::string& d) {
  for (int m : {3, 5, 9}) {
    auto g = Group::dihedral(m);
    int mu = dihedral_rotation_subgroup(*g, m);
    auto r = GSet::cosets(g, g->whole(), mu).restrict(mu);
    if (!gsets_isomorphic(r, GSet::trivial(g, mu, 2))) return fail(d, "m=" + std::to_string(m));
  }
  return true;
}

bool coinduced_two_labels(std::string& d) {
  auto g = Group::dihedral(3);
  int top = g->whole(), h = reflection_d2(g);
  auto x = coinduce(GSet::trivial(g, h, 2), top);
  auto want = disjoint_union(GSet::trivial(g, top, 2), multiple(GSet::cosets(g, top, h), 2));
  return gsets_isomorphic(x, want) || fail(d, "decomposition differs");
}

bool coinduced_free_orbit(std::string& d) {
  for (int p : {3, 5, 7}) {
    auto g = Group::dihedral(p);
    int top = g->whole(), h = reflection_d2(g);
    auto [c, dd] = c_p_d_p(p);
    auto want = disjoint_union(GSet::cosets(g, top, dihedral_rotation_subgroup(*g, p)),
                               multiple(GSet::cosets(g, top, 0), Int(c + dd).convert_to<int>()));
    if (!gsets_isomorphic(coinduce(GSet::cosets(g, h, 0), top), want)) return fail(d, ps(p) + "decomposition differs");
  }
  return true;
}

bool circle_points_decompose(std::string& d) {
  int m = 3, k = 2;
  auto g = Group::dihedral(m);
  int top = g->whole();
  int zt = g->generated({g->mul(g->zeta(), g->tau())});
  auto rhs = disjoint_union(disjoint_union(GSet::cosets(g, top, reflection_d2(g)), multiple(GSet::cosets(g, top, 0), k)),
                            GSet::cosets(g, top, zt));
  return gsets_isomorphic(circle_points(g, 2 * m * (k + 1)), rhs) || fail(d, "decomposition differs");
}

bool product_with_rotation_cosets(std::string& d) {
  int m = 9;
  auto g = Group::dihedral(m);
  int top = g->whole(), mu = dihedral_rotation_subgroup(*g, m);
  for (int h : {dihedral_reflection_subgroup(*g, 3, 0), dihedral_rotation_subgroup(*g, 3)}) {
    auto lhs = product(GSet::cosets(g, top, h), GSet::cosets(g, top, mu));
    int order = g->sub_order(h);
    auto rhs = order % 2 == 0 ? GSet::cosets(g, top, dihedral_rotation_subgroup(*g, std::gcd(m, order)))
                              : multiple(GSet::cosets(g, top, h), 2);
    if (!gsets_isomorphic(lhs, rhs)) return fail(d, "H = " + g->subgroup_name(h));
  }
  return true;
}

bool reflection_times_rotation_classes(std::string& d) {
  int m = 9;
  auto g = Group::dihedral(m);
  int top = g->whole();
  for (int k : {1, 3, 9}) {
    auto x = cls(g, top, dihedral_reflection_subgroup(*g, k, 0)) * cls(g, top, dihedral_rotation_subgroup(*g, m));
    if (!(x == cls(g, top, dihedral_rotation_subgroup(*g, k)))) return fail(d, "k=" + std::to_string(k) + ": " + x.to_string());
  }
  return true;
}

bool burnside_c2(std::string& d) {
  auto d2 = Group::dihedral(1);
  auto a = Mackey::representable(GSet::point(d2, d2->whole()));
  int top = d2->whole();
  auto free = e(a.rep()->index(top, 0, 0));
  if (!(a.tr(0, top).apply(a.unit(0)) == free)) return fail(d, "tr(1) is not [D2]");
  if (!(a.res(top, 0).apply(free) == SparseVec{{0, Int(2)}})) return fail(d, "res([D2]) is not 2");
  if (a.ngens(top) != 2 || a.ngens(0) != 1) return fail(d, "wrong ranks");
  return true;
}

bool norms_of_burnside_classes(std::string& d) {
  for (int p : {3, 5, 7}) {
    auto g = Group::dihedral(p);
    int top = g->whole(), h = reflection_d2(g);
    auto ring = BurnsideRing::get(g, top);
    auto [c, dd] = c_p_d_p(p);
    auto n1 = norm(cls(g, h, 0), top);
    auto w1 = BurnsideElement::basis(ring, dihedral_rotation_subgroup(*g, p)) + BurnsideElement::basis(ring, 0).scaled(c + dd);
    if (!(n1 == w1)) return fail(d, ps(p) + "N([D2]) = " + n1.to_string());
    auto n2 = norm(BurnsideElement::integer(BurnsideRing::get(g, h), 2), top);
    auto w2 = BurnsideElement::integer(ring, 2) + BurnsideElement::basis(ring, h).scaled(2 * c) + BurnsideElement::basis(ring, 0).scaled(dd);
    if (!(n2 == w2)) return fail(d, ps(p) + "N(2) = " + n2.to_string());
  }
  return true;
}

bool c_and_d(std::string& d) {
  if (c_p_d_p(3) != std::pair<Int, Int>{1, 0} || c_p_d_p(5) != std::pair<Int, Int>{3, 0} || c_p_d_p(7) != std::pair<Int, Int>{7, 2})
    return fail(d, "values differ");
  return true;
}

bool representable_levels(std::string& d) {
  for (auto g : {Group::dihedral(3), Group::symmetric(4)}) {
    auto a = Mackey::representable(GSet::point(g, g->whole()));
    for (int h : a.levels())
      if (a.ngens(h) != BurnsideRing::get(g, h)->rank() || a.rels(h).rank() != 0)
        return fail(d, g->descriptor() + " at " + g->subgroup_name(h));
    auto x = GSet::cosets(g, g->whole(), 0), y = GSet::cosets(g, g->whole(), g->class_reps()[1]);
    auto sum = Mackey::representable(disjoint_union(x, y));
    auto ax = Mackey::representable(x), ay = Mackey::representable(y);
    for (int h : sum.levels())
      if (sum.ngens(h) != ax.ngens(h) + ay.ngens(h)) return fail(d, g->descriptor() + ": A of a disjoint union");
  }
  return true;
}

bool constant_z_quotient(std::string& d) {
  auto d2 = Group::dihedral(1);
  auto c = mackey_iso(burnside_quotient(d2), constant_Z(d2));
  if (!c.found) return fail(d, c.reason);
  auto g = Group::dihedral(3);
  auto q = burnside_quotient(g);
  int top = g->whole();
  if (!q.value(top).is_free() || q.value(top).rank() != 2) return fail(d, "D6 top level is " + q.value(top).describe());
  Lattice span = q.rels(top);
  span.add(q.unit(top));
  span.add(e(q.rep()->index(top, reflection_d2(g), 0)));
  for (int i = 0; i < q.ngens(top); ++i)
    if (!span.contains(e(i))) return fail(d, "1 and [D6/D2] do not span the D6 top level");
  return true;
}

bool norm_of_constant_z(std::string& d) {
  for (int m : {3, 9, 15}) {
    auto g = Group::dihedral(m);
    auto c = mackey_iso(norm_mackey(constant_Z_presentation(g, reflection_d2(g)), g->whole()), burnside_quotient(g));
    if (!c.found) return fail(d, "m=" + std::to_string(m) + ": " + c.reason);
  }
  return true;
}

bool norm_spans(std::string& d) {
  for (int p : {3, 5, 7}) {
    auto g = Group::dihedral(p);
    int h = reflection_d2(g);
    auto [c, dd] = c_p_d_p(p);
    auto pt = GSet::point(g, h);
    auto two = norm_span(SpanHom::from_maps(pt, pt, GSet::trivial(g, h, 2), {0, 0}, {0, 0}), g->whole());
    Int units = 0, reflect = 0, free = 0;
    for (const auto& [key, k] : two.terms) {
      if (key.first == g->whole()) units += k;
      else if (key.first == h) reflect += k;
      else if (key.first == 0) free += k;
    }
    if (units != 2 || reflect != 2 * c || free != dd) return fail(d, ps(p) + "norm of 2");
    auto fr = GSet::cosets(g, h, 0);
    auto tr = norm_span(SpanHom::from_maps(fr, pt, fr, {0, 1}, {0, 0}), g->whole());
    Int rot = 0, fr_orbits = 0;
    for (const auto& [key, k] : tr.terms) {
      if (key.first == dihedral_rotation_subgroup(*g, p)) rot += k;
      else if (key.first == 0) fr_orbits += k;
      else return fail(d, ps(p) + "norm of the transfer span has stabilizer " + g->subgroup_name(key.first));
    }
    if (rot != 1 || fr_orbits != c + dd) return fail(d, ps(p) + "norm of the transfer span");
  }
  return true;
}

bool reflection_choice(std::string& d) {
  for (int m : {3, 5, 9}) {
    auto g = Group::dihedral(m);
    auto p = constant_Z_presentation(g, reflection_d2(g));
    auto q = conjugate_presentation(p, g->zeta());
    auto c = mackey_iso(norm_mackey(p, g->whole()), norm_mackey(q, g->whole()));
    if (!c.found) return fail(d, "m=" + std::to_string(m) + ": " + c.reason);
  }
  return true;
}

bool reciprocity_d6(std::string& d) {
  auto g = Group::dihedral(3);
  std::string got = to_text(*g, reciprocity_sum(*g, g->whole(), reflection_d2(g)));
  std::string want = "N_D2^D6(a) + N_D2^D6(b) + tr_D2^D6(a * N_e^D2([z]res^D2_e(b))) + tr_D2^D6(b * N_e^D2([z]res^D2_e(a)))";
  return got == want || fail(d, got);
}

bool reciprocity_d14(std::string& d) {
  auto g = Group::dihedral(7);
  int free = 0;
  auto expr = reciprocity_sum_dihedral(g);
  for (const auto& s : expr->kids)
    if (s->op == TambaraOp::Tr && s->from == 0 && s->kids[0]->op == TambaraOp::Product && s->kids[0]->kids.size() == 7) ++free;
  return free > 0 || fail(d, "no free summand");
}

bool word_counts(std::string& d) {
  auto w3 = dihedral_words(3), w5 = dihedral_words(5), w7 = dihedral_words(7);
  if (w3.x.size() != 2 || !w3.y.empty() || w5.x.size() != 6 || !w5.y.empty() || w7.y.size() != 2) return fail(d, "counts differ");
  return true;
}

bool reciprocity_at_one(std::string& d) {
  for (int p : {3, 5, 7}) {
    auto g = Group::dihedral(p);
    int top = g->whole(), h = reflection_d2(g);
    auto r = burnside_tambara(g);
    auto ring = BurnsideRing::get(g, top);
    auto [c, dd] = c_p_d_p(p);
    auto want = BurnsideElement::integer(ring, 2) + BurnsideElement::basis(ring, h).scaled(2 * c) + BurnsideElement::basis(ring, 0).scaled(dd);
    auto one = r->integer(h, 1);
    if (evaluate(*r, reciprocity_sum_dihedral(g), one, one) != want.coeffs) return fail(d, ps(p) + "value differs");
  }
  return true;
}

bool bar_faces(std::string& d) {
  auto b = hr_complex(constant_z_ring(), Group::dihedral(3), 1);
  if (b.faces[1][0].name != "d_0 = psi_R box id" || b.faces[1][1].name != "d_1 = id box psi_L") return fail(d, "face names differ");
  std::string why;
  if (!verify_morphism(b.terms[1], b.terms[0], b.faces[1][0].map, &why)) return fail(d, why);
  if (!verify_morphism(b.terms[1], b.terms[0], b.faces[1][1].map, &why)) return fail(d, why);
  return true;
}

bool hr0_d6(std::string& d) {
  auto g = Group::dihedral(3);
  auto c = mackey_iso(hr0(constant_z_ring(), g), burnside_quotient(g));
  return c.found || fail(d, c.reason);
}

bool hr0_top_rank(std::string& d) {
  for (int m : {3, 5, 9, 15}) {
    auto g = Group::dihedral(m);
    auto v = hr0(constant_z_ring(), g).value(g->whole());
    if (!v.is_free() || v.rank() != num_divisors(m)) return fail(d, "m=" + std::to_string(m) + ": " + v.describe());
  }
  return true;
}

bool phi_compatible(std::string& d) {
  auto a = phi_compatibility_check(constant_z_ring(), 3, 3, 1);
  if (!a.found()) return fail(d, a.to_json());
  auto b = phi_compatibility_check(constant_z_ring(), 9, 3, 0);
  return b.found() || fail(d, b.to_json());
}

bool witt_ranks(std::string& d) {
  for (int k : {1, 2}) {
    auto w = truncated_witt(constant_z_ring(), 3, k);
    if (!w.top().is_free() || !w.under().is_free() || w.top().rank() != k + 1 || w.under().rank() != k + 1)
      return fail(d, "k=" + std::to_string(k) + ": " + w.top().describe() + " / " + w.under().describe());
  }
  return true;
}

bool witt_square(std::string& d) {
  std::string why;
  return witt_tower(constant_z_ring(), 3, 2).check(&why) || fail(d, why);
}

}  // namespace

std::vector<Check> paper_suite() {
  return {
      {"double cosets D2\\D2p/D2", double_cosets},
      {"conjugate reflection subgroup", rotated_reflection},
      {"Weyl group of mu_m", weyl_of_rotations},
      {"restriction of D2m/mu_m to mu_m", restriction_of_rotation_cosets},
      {"Map^D2(D6, {a,b})", coinduced_two_labels},
      {"Map^D2(D2p, D2)", coinduced_free_orbit},
      {"points on the circle as a D6-set", circle_points_decompose},
      {"D18/H x D18/mu_9", product_with_rotation_cosets},
      {"[D2m/D2k][D2m/mu_m] = [D2m/mu_k]", reflection_times_rotation_classes},
      {"Burnside functor of D2", burnside_c2},
      {"norms of [D2] and 2", norms_of_burnside_classes},
      {"c_p and d_p", c_and_d},
      {"levels of representables", representable_levels},
      {"quotients of the Burnside functor", constant_z_quotient},
      {"norm of constant Z", norm_of_constant_z},
      {"norms of the spans 2 and tr", norm_spans},
      {"choice of reflection subgroup", reflection_choice},
      {"reciprocity over D6", reciprocity_d6},
      {"reciprocity over D14", reciprocity_d14},
      {"word counts", word_counts},
      {"reciprocity at a = b = 1", reciprocity_at_one},
      {"degree-one faces", bar_faces},
      {"HR_0 over D6", hr0_d6},
      {"HR_0 top-level rank", hr0_top_rank},
      {"geometric fixed points of HR", phi_compatible},
      {"Witt vector ranks", witt_ranks},
      {"Witt tower square", witt_square},
  };
}

}  // namespace equivar::suite
