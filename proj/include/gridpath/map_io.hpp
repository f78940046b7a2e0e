#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gridpath/grid.hpp"

namespace gridpath {

// Parse failure in a text input; `line` is 1-based (0 when not line specific).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

// MovingAI `.map` text. '.', 'G' and 'S' are traversable; '@', 'O', 'T', 'W'
// are blocked. Any other terrain character is rejected.
GridMap load_map(std::string_view text, std::string_view source = "<map>");
GridMap load_map_file(const std::filesystem::path& path);

std::string write_map(const GridMap& map);
void write_map_file(const GridMap& map, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace gridpath
