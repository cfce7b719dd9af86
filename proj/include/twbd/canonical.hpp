#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twbd/design.hpp"
#include "twbd/perm.hpp"

namespace twbd {

// Label-invariant encoding of a set system: the block masks after
// canonical relabeling of the points, sorted ascending, with the number of
// blocks of each size up front. Equal certificates <=> isomorphic systems.
class Certificate {
public:
  Certificate() = default;
  Certificate(Point v, std::vector<std::uint64_t> blocks);

  Point v() const { return v_; }
  const std::vector<std::uint64_t> &blocks() const { return blocks_; }
  // Block counts by size, index = block size.
  std::vector<std::uint32_t> color_signature() const;

  std::string hex() const;
  static Certificate from_hex(const std::string &text);

  friend bool operator==(const Certificate &, const Certificate &) = default;
  friend auto operator<=>(const Certificate &, const Certificate &) = default;

private:
  Point v_ = 0;
  std::vector<std::uint64_t> blocks_;
};

struct CanonicalForm {
  Certificate certificate;
  // labeling(x) = canonical label of point x.
  Permutation labeling = Permutation::identity(1);
  // Automorphisms met during the search; they generate the full
  // automorphism group of the system.
  std::vector<Permutation> automorphisms;
  std::uint64_t leaves_visited = 0;
};

// Individualization-refinement search over the point/block incidence
// structure, blocks colored by size.
CanonicalForm canonical_form(const SetSystem &s);
Certificate canonical_certificate(const SetSystem &s);

// Cheap isomorphism invariants: sorted replication profile, block size
// counts, block intersection and pair coverage distributions.
std::vector<std::uint64_t> design_invariants(const SetSystem &s);

bool are_isomorphic(const SetSystem &a, const SetSystem &b);

struct AutomorphismGroup {
  std::vector<Permutation> generators;
  std::uint64_t order = 1;
};

// Throws CapExceeded if the closure exceeds cap.
AutomorphismGroup automorphism_group(const SetSystem &s, std::uint64_t cap = kDefaultClosureCap);

// First-seen representatives of the isomorphism classes of a stream of
// systems. Systems are bucketed by invariants first; certificates are
// computed only when a bucket is shared.
class IsoReducer {
public:
  struct Class {
    SetSystem representative;
    std::uint64_t multiplicity = 0;
  };

  // Returns the class id of s; ids are dense in first-seen order.
  std::size_t add(const SetSystem &s);
  // As add(), with a certificate already computed by the caller.
  std::size_t add(const SetSystem &s, const Certificate &cert);

  const std::vector<Class> &classes() const { return classes_; }
  const Certificate &certificate(std::size_t id);

private:
  std::size_t find_or_insert(const SetSystem &s, const Certificate *given);

  std::vector<Class> classes_;
  std::vector<std::optional<Certificate>> certs_;
  std::vector<std::vector<std::uint64_t>> invariants_;
  std::map<std::vector<std::uint64_t>, std::vector<std::size_t>> buckets_;
};

std::vector<IsoReducer::Class> iso_reduce(const std::vector<SetSystem> &systems);

// Certificate -> class id map persisted as lines "<hex> <id>".
class CertificateCache {
public:
  std::optional<std::size_t> find(const Certificate &c) const;
  std::size_t insert(const Certificate &c);  // existing id or the next free one
  std::size_t size() const { return ids_.size(); }

  void load(const std::string &path);
  void save(const std::string &path) const;

private:
  std::map<std::string, std::size_t> ids_;
};

}  // namespace twbd
