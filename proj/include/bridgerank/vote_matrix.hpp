#pragma once
// Sparse people × items vote table.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "bridgerank/types.hpp"

namespace bridgerank {

// One raw input row. `value` is kept as an int so out-of-range input can be
// rejected with InvalidValue instead of silently narrowing.
struct VoteRecord {
    PersonId person;
    ItemId item;
    int value = 0;
};

class VoteMatrix {
  public:
    struct Entry {
        size_t person;  // index into people()
        size_t item;    // index into items()
        Vote value;
    };

    VoteMatrix() = default;

    // Registers person/item on first appearance. Throws DuplicateVote.
    void add(const PersonId& person, const ItemId& item, Vote value);
    size_t add_person(const PersonId& person);
    size_t add_item(const ItemId& item);

    const std::vector<PersonId>& people() const { return people_; }
    const std::vector<ItemId>& items() const { return items_; }
    const std::vector<Entry>& entries() const { return entries_; }
    size_t vote_count() const { return entries_.size(); }

    std::optional<size_t> person_index(const PersonId& p) const;
    std::optional<size_t> item_index(const ItemId& i) const;
    bool has_item(const ItemId& i) const { return item_index(i).has_value(); }

    std::optional<Vote> vote(const PersonId& p, const ItemId& i) const;
    std::optional<Vote> vote(size_t person, size_t item) const;

    // Entry indices touching the given person / item, in insertion order.
    std::span<const size_t> person_entries(size_t person) const { return by_person_[person]; }
    std::span<const size_t> item_entries(size_t item) const { return by_item_[item]; }

  private:
    static uint64_t key(size_t person, size_t item) {
        return (static_cast<uint64_t>(person) << 32) | static_cast<uint64_t>(item);
    }

    std::vector<PersonId> people_;
    std::vector<ItemId> items_;
    std::unordered_map<PersonId, size_t> person_lookup_;
    std::unordered_map<ItemId, size_t> item_lookup_;
    std::vector<Entry> entries_;
    std::unordered_map<uint64_t, size_t> cell_lookup_;
    std::vector<std::vector<size_t>> by_person_;
    std::vector<std::vector<size_t>> by_item_;
};

// Validates and builds a matrix. Order of people/items is first appearance.
// Throws EmptyInput, InvalidValue, DuplicateVote.
VoteMatrix build_vote_matrix(std::span<const VoteRecord> records);

Vote vote_from_int(int value);

// CSV with header `person_id,item_id,vote`. Throws ParseError naming the line;
// value/duplicate problems are reported as InvalidValue/DuplicateVote with the
// line number in the message.
std::vector<VoteRecord> read_votes_csv(std::istream& in);
VoteMatrix read_vote_matrix_csv(std::istream& in);
void write_votes_csv(std::ostream& out, const VoteMatrix& m);

}  // namespace bridgerank
