#pragma once

#include "nv/permutation.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace nv {

struct group_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::size_t kClosureBound = 4096;

class PermGroup {
public:
    PermGroup() = default;
    PermGroup(LabelModel m, std::vector<Permutation> gens);
    static PermGroup from_text(const std::vector<std::string>& generators, LabelModel m);

    LabelModel model() const { return model_; }
    const std::vector<Permutation>& generators() const { return gens_; }
    /// Breadth-first closure, identity first; throws group_error past kClosureBound.
    const std::vector<Permutation>& elements() const;
    std::size_t order() const { return elements().size(); }
    bool contains(const Permutation& p) const;

private:
    struct Cache {
        std::mutex mu;
        std::vector<Permutation> elements, sorted;
        bool ready = false;
    };
    const Cache& materialize() const;

    LabelModel model_ = LabelModel::points;
    std::vector<Permutation> gens_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Orbit partition of the 24 labels; each orbit sorted, orbits ordered by least element.
std::vector<std::vector<int>> orbits(const PermGroup& g);

struct GroupFingerprint {
    std::size_t order = 1;
    std::map<int, int> element_orders;  // order -> count
    std::vector<long> abelianization;   // primary invariants, ascending
    std::size_t center = 1;
    std::size_t derived = 1;
    long exponent = 1;

    bool operator==(const GroupFingerprint&) const = default;
    std::string to_string() const;
};

GroupFingerprint fingerprint(const PermGroup& g);
PermGroup derived_subgroup(const PermGroup& g);
PermGroup center(const PermGroup& g);

struct CatalogEntry {
    int n = 0;
    std::string name;
    GroupFingerprint fingerprint;
};

struct ambiguity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Catalog name whose fingerprint matches, or "unrecognized".
std::string identify_type(const PermGroup& g, const std::vector<CatalogEntry>& catalog);
/// Throws ambiguity_error naming the first pair of catalog entries sharing a fingerprint.
void check_catalog_separated(const std::vector<CatalogEntry>& catalog);

bool contains_subgroup(const PermGroup& g, const PermGroup& h);

struct scope_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::size_t kSubgroupSearchBound = 64;

/// Subgroups of g with the target fingerprint, one per conjugacy class.
std::vector<PermGroup> find_isomorphic_subgroups(const PermGroup& g, const GroupFingerprint& target);

/// Textbook permutation realizations of catalog groups, keyed by catalog number.
std::map<int, PermGroup> textbook_groups();

}  // namespace nv
