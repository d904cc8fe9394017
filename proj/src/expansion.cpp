#include "kmn/expansion.hpp"

#include <algorithm>

namespace kmn {

Expansion::Expansion(std::string name, std::vector<ElementSet> domain, std::vector<ElementSet> images)
    : name_(std::move(name)), domain_(std::move(domain)), images_(std::move(images)) {
  if (domain_.size() != images_.size()) throw PreconditionError("expansion '" + name_ + "' is not total");
}

Expansion Expansion::identity(const IdealLattice& lattice) {
  return Expansion("delta0", lattice.members(), lattice.members());
}

Expansion Expansion::radical(const IdealEngine& engine) {
  std::vector<ElementSet> images;
  for (const auto& i : engine.lattice().members()) images.push_back(engine.radical(i));
  return Expansion("delta1", engine.lattice().members(), std::move(images));
}

Expansion Expansion::full(const IdealLattice& lattice) {
  return Expansion("deltaR", lattice.members(), std::vector<ElementSet>(lattice.size(), lattice.carrier()));
}

Expansion Expansion::from_table(std::string name, const IdealLattice& lattice,
                                const std::vector<std::pair<ElementSet, ElementSet>>& table) {
  std::vector<ElementSet> images(lattice.size());
  std::vector<bool> seen(lattice.size(), false);
  for (const auto& [from, to] : table) {
    auto idx = lattice.index_of(from);
    if (!idx) throw PreconditionError("expansion '" + name + "' maps a non-hyperideal");
    if (seen[*idx] && images[*idx] != to) throw PreconditionError("expansion '" + name + "' is not single-valued");
    seen[*idx] = true;
    images[*idx] = to;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw PreconditionError("expansion '" + name + "' is not total on the hyperideal lattice");
  return Expansion(std::move(name), lattice.members(), std::move(images));
}

ElementSet Expansion::operator()(ElementSet ideal) const {
  for (std::size_t i = 0; i < domain_.size(); ++i)
    if (domain_[i] == ideal) return images_[i];
  throw PreconditionError("expansion '" + name_ + "' is undefined on this subset");
}

AxiomReport validate_expansion(const IdealLattice& lattice, const Expansion& delta) {
  AxiomReport rep;
  AxiomResult total{"expansion.total", AxiomStatus::Pass, {}, -1, {}};
  AxiomResult inflate{"expansion.inflationary", AxiomStatus::Pass, {}, -1, {}};
  AxiomResult mono{"expansion.monotone", AxiomStatus::Pass, {}, -1, {}};
  std::vector<ElementSet> img(lattice.size());
  for (std::size_t i = 0; i < lattice.size() && total.status == AxiomStatus::Pass; ++i) {
    auto it = std::find(delta.domain().begin(), delta.domain().end(), lattice[i]);
    if (it == delta.domain().end()) {
      total = {"expansion.total", AxiomStatus::Fail, {static_cast<Elem>(i)}, -1, "no image"};
      break;
    }
    img[i] = delta.images()[it - delta.domain().begin()];
    if (!lattice.contains(img[i]))
      total = {"expansion.total", AxiomStatus::Fail, {static_cast<Elem>(i)}, -1, "image is not a hyperideal"};
  }
  if (total.status == AxiomStatus::Pass) {
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      if (!lattice[i].subset_of(img[i])) {
        inflate = {"expansion.inflationary", AxiomStatus::Fail, {static_cast<Elem>(i)}, -1, "I not inside delta(I)"};
        break;
      }
    }
    bool done = false;
    for (std::size_t i = 0; i < lattice.size() && !done; ++i)
      for (std::size_t j = 0; j < lattice.size() && !done; ++j)
        if (lattice[i].subset_of(lattice[j]) && !img[i].subset_of(img[j])) {
          mono = {"expansion.monotone", AxiomStatus::Fail, {static_cast<Elem>(i), static_cast<Elem>(j)}, -1,
                  "I inside J but delta(I) not inside delta(J)"};
          done = true;
        }
  } else {
    inflate.status = mono.status = AxiomStatus::NotEvaluated;
  }
  rep.results = {total, inflate, mono};
  return rep;
}

Expansion compose(const Expansion& gamma, const Expansion& delta) {
  std::vector<ElementSet> images;
  for (ElementSet d : delta.images()) images.push_back(gamma(d));
  Expansion out(gamma.name() + "o" + delta.name(), delta.domain(), std::move(images));
  for (std::size_t i = 0; i < out.domain().size(); ++i) {
    if (!out.domain()[i].subset_of(out.images()[i]))
      throw PreconditionError("composition " + out.name() + " is not inflationary");
    for (std::size_t j = 0; j < out.domain().size(); ++j)
      if (out.domain()[i].subset_of(out.domain()[j]) && !out.images()[i].subset_of(out.images()[j]))
        throw PreconditionError("composition " + out.name() + " is not monotone");
  }
  return out;
}

std::optional<std::pair<ElementSet, ElementSet>> intersection_violation(const IdealLattice& lattice,
                                                                        const Expansion& delta) {
  for (std::size_t i = 0; i < lattice.size(); ++i)
    for (std::size_t j = i + 1; j < lattice.size(); ++j) {
      const ElementSet meet = lattice[i] & lattice[j];
      if (!lattice.contains(meet)) return std::make_pair(lattice[i], lattice[j]);
      if (delta(meet) != (delta(lattice[i]) & delta(lattice[j]))) return std::make_pair(lattice[i], lattice[j]);
    }
  return std::nullopt;
}

std::vector<Expansion> standard_expansions(const IdealEngine& engine) {
  return {Expansion::identity(engine.lattice()), Expansion::radical(engine), Expansion::full(engine.lattice())};
}

Expansion expansion_by_name(const IdealEngine& engine, const std::string& name) {
  if (name == "delta0") return Expansion::identity(engine.lattice());
  if (name == "delta1") return Expansion::radical(engine);
  if (name == "deltaR") return Expansion::full(engine.lattice());
  throw PreconditionError("unknown expansion '" + name + "' (expected delta0, delta1 or deltaR)");
}

}  // namespace kmn
