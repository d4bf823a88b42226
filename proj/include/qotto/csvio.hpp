#pragma once

#include <string>
#include <vector>

// CSV and CLI-grammar helpers shared by the tools: shortest-round-trip float
// formatting so identical runs emit byte-identical files, plus parsers for
// the "start:stop:count" grid and comma-list flag grammars.

namespace qotto {

// Round-trip decimal formatting via std::to_chars (scientific, 17 significant
// digits); deterministic across runs and thread counts.
std::string format_double(double x);

// "a:b:n" -> n points linearly spaced from a to b inclusive; n == 1 requires
// a == b. Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(const std::string& text);

// "v1,v2,..." -> values; empty items rejected.
std::vector<double> parse_list(const std::string& text);

// key=value file, '#' comments, blank lines ignored; duplicate keys rejected.
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

}  // namespace qotto
