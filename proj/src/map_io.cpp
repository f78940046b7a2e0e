#include "gridpath/map_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace gridpath {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

int parse_header_int(std::string_view line, std::string_view key, const std::string& src,
                     int lineno) {
  if (line.substr(0, key.size()) != key || line.size() <= key.size() || line[key.size()] != ' ') {
    throw ParseError(src, lineno, "expected '" + std::string(key) + " <n>'");
  }
  std::string_view num = line.substr(key.size() + 1);
  while (!num.empty() && num.front() == ' ') num.remove_prefix(1);
  while (!num.empty() && num.back() == ' ') num.remove_suffix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
  if (ec != std::errc() || ptr != num.data() + num.size() || value <= 0) {
    throw ParseError(src, lineno, "invalid " + std::string(key) + " value '" + std::string(num) +
                                      "'");
  }
  return value;
}

}  // namespace

GridMap load_map(std::string_view text, std::string_view source) {
  const std::string src(source);
  const auto lines = split_lines(text);
  if (lines.size() < 4) throw ParseError(src, static_cast<int>(lines.size()) + 1, "truncated header");
  if (lines[0] != "type octile") throw ParseError(src, 1, "expected 'type octile'");
  const int height = parse_header_int(lines[1], "height", src, 2);
  const int width = parse_header_int(lines[2], "width", src, 3);
  if (lines[3] != "map") throw ParseError(src, 4, "expected 'map'");

  std::size_t body_end = lines.size();
  while (body_end > 4 && lines[body_end - 1].empty()) --body_end;
  if (body_end - 4 != static_cast<std::size_t>(height)) {
    throw ParseError(src, static_cast<int>(body_end) + 1,
                     "expected " + std::to_string(height) + " map rows, found " +
                         std::to_string(body_end - 4));
  }

  GridMap map(width, height);
  for (int y = 0; y < height; ++y) {
    const std::string_view row = lines[4 + y];
    const int lineno = 5 + y;
    if (row.size() != static_cast<std::size_t>(width)) {
      throw ParseError(src, lineno,
                       "row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(width));
    }
    for (int x = 0; x < width; ++x) {
      switch (row[x]) {
        case '.':
        case 'G':
        case 'S':
          break;
        case '@':
        case 'O':
        case 'T':
        case 'W':
          map.set_blocked({x, y}, true);
          break;
        default:
          throw ParseError(src, lineno,
                           std::string("unknown terrain character '") + row[x] + "' at column " +
                               std::to_string(x + 1));
      }
    }
  }
  return map;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GridMap load_map_file(const std::filesystem::path& path) {
  return load_map(read_text_file(path), path.string());
}

std::string write_map(const GridMap& map) {
  std::string out = "type octile\nheight " + std::to_string(map.height()) + "\nwidth " +
                    std::to_string(map.width()) + "\nmap\n";
  out.reserve(out.size() + map.cell_count() + map.height());
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) out.push_back(map.traversable({x, y}) ? '.' : '@');
    out.push_back('\n');
  }
  return out;
}

void write_map_file(const GridMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_map(map);
}

}  // namespace gridpath
