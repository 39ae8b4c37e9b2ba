#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dexp {

/// Malformed input file. Line numbers are 1-based; 0 means unknown.
class FormatError : public std::runtime_error {
  public:
    FormatError(std::string const& what, std::size_t line = 0, std::size_t ordinal = 0)
        : std::runtime_error(what), m_line(line), m_ordinal(ordinal) {}

    [[nodiscard]] std::size_t line() const noexcept { return m_line; }
    /// 1-based ordinal of the record being read, when applicable.
    [[nodiscard]] std::size_t ordinal() const noexcept { return m_ordinal; }

  private:
    std::size_t m_line;
    std::size_t m_ordinal;
};

}  // namespace dexp
