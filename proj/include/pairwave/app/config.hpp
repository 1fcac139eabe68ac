#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pairwave/app/units.hpp"

namespace pairwave::app {

// flat "section.key = value unit" text; '#' starts a comment
struct RawConfig {
    std::vector<std::pair<std::string, std::string>> entries;  // file order
    std::string text;                                          // bytes hashed into provenance
    std::string origin;                                        // file path or "<string>"
    std::string base_dir;                                      // for relative data paths

    const std::string* find(const std::string& key) const;
    void set(const std::string& key, const std::string& value);
};

RawConfig parse_config(const std::string& text, const std::string& origin = "<string>", const std::string& base_dir = ".");
RawConfig load_config(const std::string& path);

bool is_known_key(const std::string& key);
// dimension of a numeric key; filter widths report length (nm) but also accept rad/s
std::optional<Dim> key_dimension(const std::string& key);
bool is_sweepable(const std::string& key);

std::string sha256_hex(const std::string& bytes);

}  // namespace pairwave::app
