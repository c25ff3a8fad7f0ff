#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cwp {

using BigInt = boost::multiprecision::cpp_int;

// Thrown for malformed user input (bad JSON, bad group tables, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TooLong : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DepthExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SymbolKind : std::uint8_t {
  generator,
  element,
  stable,
  block,
  block_right,  // [Z t^-1]
  block_left,   // [t Z]
  block_both,   // [t Z t^-1]
  end_marker,
  block_class,
};

// A letter of some alphabet together with a sign. Symbols with different
// scopes never collide, which lets derived groups mint fresh alphabets.
struct Symbol {
  SymbolKind kind = SymbolKind::generator;
  std::int8_t sign = 1;
  std::uint16_t scope = 0;
  std::uint32_t id = 0;

  constexpr bool invertible() const { return kind != SymbolKind::end_marker; }

  constexpr Symbol inverse() const {
    Symbol s = *this;
    s.sign = static_cast<std::int8_t>(-sign);
    return s;
  }

  constexpr Symbol positive() const {
    Symbol s = *this;
    s.sign = 1;
    return s;
  }

  constexpr std::uint64_t letter_key() const {
    return (std::uint64_t(kind) << 56) | (std::uint64_t(scope) << 32) | id;
  }

  constexpr std::uint64_t key() const {
    return (letter_key() << 1) | (sign < 0 ? 1u : 0u);
  }

  friend constexpr bool operator==(const Symbol&, const Symbol&) = default;
};

constexpr Symbol make_symbol(SymbolKind kind, std::uint32_t id, std::uint16_t scope = 0,
                             std::int8_t sign = 1) {
  return Symbol{kind, sign, scope, id};
}

inline constexpr Symbol kEndMarker{SymbolKind::end_marker, 1, 0, 0};

std::string debug_string(Symbol s);

struct SymbolHash {
  std::size_t operator()(const Symbol& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.key());
  }
};

}  // namespace cwp
