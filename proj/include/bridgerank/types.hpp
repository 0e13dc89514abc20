#pragma once
// Core identifiers, vote encoding and the error type shared by every module.

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bridgerank {

// Strongly typed string identifier. Tag keeps PersonId and ItemId apart.
template <typename Tag>
struct Id {
    std::string value;

    Id() = default;
    explicit Id(std::string v) : value(std::move(v)) {}
    explicit Id(const char* v) : value(v) {}

    auto operator<=>(const Id&) const = default;
    bool operator==(const Id&) const = default;

    const std::string& str() const { return value; }
};

struct PersonTag {};
struct ItemTag {};

using PersonId = Id<PersonTag>;
using ItemId = Id<ItemTag>;
using GroupId = int;

// Agree = +1, Disagree = -1, Pass = 0. "Not seen" is the absence of a Vote.
enum class Vote : int8_t { Disagree = -1, Pass = 0, Agree = 1 };

inline int to_int(Vote v) { return static_cast<int>(v); }

enum class ErrorCode {
    EmptyInput,
    DuplicateVote,
    InvalidValue,
    InvalidArgument,
    ParseError,
    TooFewPeople,
    UnlabeledPerson,
    UnknownPerson,
    UnknownItem,
    UnknownViewer,
    MissingSignal,
    NoAuthorship,
    SingleGroup,
    EmptyGroupGraph,
    EmptyGraph,
    NoTriangles,
    UnknownMotif,
    MismatchedMetrics,
    DimensionMismatch,
    DegenerateDistribution,
    NonConvergence,
    IoError,
};

const char* error_name(ErrorCode code);

// Numerical failures map to exit code 3, everything else about inputs to 2.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code), detail_(what) {}

    ErrorCode code() const { return code_; }
    // Message without the code name prefix.
    const std::string& detail() const { return detail_; }

  private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace bridgerank

template <typename Tag>
struct std::hash<bridgerank::Id<Tag>> {
    size_t operator()(const bridgerank::Id<Tag>& id) const noexcept {
        return std::hash<std::string>{}(id.value);
    }
};
