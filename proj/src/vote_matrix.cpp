#include "bridgerank/vote_matrix.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

namespace bridgerank {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::DuplicateVote: return "DuplicateVote";
        case ErrorCode::InvalidValue: return "InvalidValue";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::TooFewPeople: return "TooFewPeople";
        case ErrorCode::UnlabeledPerson: return "UnlabeledPerson";
        case ErrorCode::UnknownPerson: return "UnknownPerson";
        case ErrorCode::UnknownItem: return "UnknownItem";
        case ErrorCode::UnknownViewer: return "UnknownViewer";
        case ErrorCode::MissingSignal: return "MissingSignal";
        case ErrorCode::NoAuthorship: return "NoAuthorship";
        case ErrorCode::SingleGroup: return "SingleGroup";
        case ErrorCode::EmptyGroupGraph: return "EmptyGroupGraph";
        case ErrorCode::EmptyGraph: return "EmptyGraph";
        case ErrorCode::NoTriangles: return "NoTriangles";
        case ErrorCode::UnknownMotif: return "UnknownMotif";
        case ErrorCode::MismatchedMetrics: return "MismatchedMetrics";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_numerical(ErrorCode code) {
    return code == ErrorCode::NonConvergence || code == ErrorCode::DegenerateDistribution;
}

size_t VoteMatrix::add_person(const PersonId& person) {
    auto [it, inserted] = person_lookup_.try_emplace(person, people_.size());
    if (inserted) {
        people_.push_back(person);
        by_person_.emplace_back();
    }
    return it->second;
}

size_t VoteMatrix::add_item(const ItemId& item) {
    auto [it, inserted] = item_lookup_.try_emplace(item, items_.size());
    if (inserted) {
        items_.push_back(item);
        by_item_.emplace_back();
    }
    return it->second;
}

void VoteMatrix::add(const PersonId& person, const ItemId& item, Vote value) {
    const auto p = person_index(person);
    const auto i = item_index(item);
    if (p && i && cell_lookup_.contains(key(*p, *i))) {
        throw Error(ErrorCode::DuplicateVote, person.str() + "," + item.str());
    }
    const size_t pi = p ? *p : add_person(person);
    const size_t ii = i ? *i : add_item(item);
    cell_lookup_.emplace(key(pi, ii), entries_.size());
    by_person_[pi].push_back(entries_.size());
    by_item_[ii].push_back(entries_.size());
    entries_.push_back({pi, ii, value});
}

std::optional<size_t> VoteMatrix::person_index(const PersonId& p) const {
    auto it = person_lookup_.find(p);
    if (it == person_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<size_t> VoteMatrix::item_index(const ItemId& i) const {
    auto it = item_lookup_.find(i);
    if (it == item_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<Vote> VoteMatrix::vote(size_t person, size_t item) const {
    auto it = cell_lookup_.find(key(person, item));
    if (it == cell_lookup_.end()) return std::nullopt;
    return entries_[it->second].value;
}

std::optional<Vote> VoteMatrix::vote(const PersonId& p, const ItemId& i) const {
    auto pi = person_index(p);
    auto ii = item_index(i);
    if (!pi || !ii) return std::nullopt;
    return vote(*pi, *ii);
}

Vote vote_from_int(int value) {
    switch (value) {
        case -1: return Vote::Disagree;
        case 0: return Vote::Pass;
        case 1: return Vote::Agree;
        default: throw Error(ErrorCode::InvalidValue, "vote value " + std::to_string(value));
    }
}

VoteMatrix build_vote_matrix(std::span<const VoteRecord> records) {
    if (records.empty()) {
        throw Error(ErrorCode::EmptyInput, "no vote records");
    }
    VoteMatrix m;
    for (const auto& r : records) {
        m.add(r.person, r.item, vote_from_int(r.value));
    }
    return m;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string line_tag(size_t line_no) { return "line " + std::to_string(line_no); }

}  // namespace

std::vector<VoteRecord> read_votes_csv(std::istream& in) {
    std::string line;
    size_t line_no = 0;
    std::vector<VoteRecord> records;
    bool header_seen = false;
    std::unordered_set<std::string> seen_cells;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_seen) {
            if (line != "person_id,item_id,vote") {
                throw Error(ErrorCode::ParseError,
                            line_tag(line_no) + ": expected header person_id,item_id,vote");
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 3 || f[0].empty() || f[1].empty()) {
            throw Error(ErrorCode::ParseError, line_tag(line_no) + ": expected 3 fields");
        }
        int value = 0;
        if (f[2] == "1") {
            value = 1;
        } else if (f[2] == "-1") {
            value = -1;
        } else if (f[2] == "0") {
            value = 0;
        } else {
            throw Error(ErrorCode::InvalidValue,
                        line_tag(line_no) + ": vote must be -1, 0 or 1, got '" + f[2] + "'");
        }
        if (!seen_cells.insert(f[0] + '\n' + f[1]).second) {
            throw Error(ErrorCode::DuplicateVote, line_tag(line_no) + ": " + f[0] + "," + f[1]);
        }
        records.push_back({PersonId(f[0]), ItemId(f[1]), value});
    }
    if (!header_seen) {
        throw Error(ErrorCode::EmptyInput, "empty vote file");
    }
    if (records.empty()) {
        throw Error(ErrorCode::EmptyInput, "vote file has no rows");
    }
    return records;
}

VoteMatrix read_vote_matrix_csv(std::istream& in) {
    const auto records = read_votes_csv(in);
    return build_vote_matrix(records);
}

void write_votes_csv(std::ostream& out, const VoteMatrix& m) {
    out << "person_id,item_id,vote\n";
    for (const auto& e : m.entries()) {
        out << m.people()[e.person].str() << ',' << m.items()[e.item].str() << ','
            << to_int(e.value) << '\n';
    }
}

}  // namespace bridgerank
