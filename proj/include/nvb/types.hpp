#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace nvb {

// Dense ids. Strong enums keep vertex and simplex indices apart.
enum class VertexId : std::uint32_t {};
enum class SimplexId : std::uint32_t {};

constexpr std::size_t index(VertexId v) { return static_cast<std::size_t>(v); }
constexpr std::size_t index(SimplexId s) { return static_cast<std::size_t>(s); }
constexpr VertexId vertex_id(std::size_t i) { return static_cast<VertexId>(i); }
constexpr SimplexId simplex_id(std::size_t i) { return static_cast<SimplexId>(i); }

/// Order-normalized edge: the smaller vertex id is stored first.
struct EdgeKey {
  VertexId lo{};
  VertexId hi{};

  EdgeKey() = default;
  EdgeKey(VertexId a, VertexId b) : lo(a < b ? a : b), hi(a < b ? b : a) {}

  bool contains(VertexId v) const { return v == lo || v == hi; }
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t(index(e.lo)) << 32) | index(e.hi));
  }
};

enum class ErrorKind {
  DegenerateCell,
  IndexOutOfRange,
  DuplicateCell,
  DuplicateVertexInCell,
  UnknownEdge,
  InvalidColoring,
  UncoloredVertex,
  NonDistinctGenerations,
  EqualGenerations,
  NotLive,
  NonTermination,
  PointOutside,
  Degenerate,
  InvalidPermutation,
  EmptyHistory,
  SingularMatrix,
  InvalidArgument,
  ParseError,
  IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nvb
