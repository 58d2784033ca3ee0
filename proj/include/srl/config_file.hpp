#ifndef SRL_CONFIG_FILE_HPP
#define SRL_CONFIG_FILE_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

namespace srl {

/// Flat `key=value` configuration. Blank lines and `#` comments are ignored;
/// whitespace around keys and values is trimmed. Duplicate keys are an error.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values(const std::filesystem::path& path);

long parse_int(const std::string& key, const std::string& value);
double parse_double(const std::string& key, const std::string& value);
bool parse_bool(const std::string& key, const std::string& value);

/// Writes `content` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace srl

#endif  // SRL_CONFIG_FILE_HPP
