#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spinorlz {

/// Flat `key = value` text with `#` / `;` comment lines.
class KeyValueFile
{
public:
  static KeyValueFile parse(std::string_view text, std::string source = "<string>");
  static KeyValueFile load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return mValues.count(key) != 0; }
  std::string text(const std::string& key) const;
  std::optional<std::string> maybe_text(const std::string& key) const;
  double number(const std::string& key) const;
  std::optional<double> maybe_number(const std::string& key) const;
  std::vector<std::string> keys() const;
  const std::string& source() const { return mSource; }

private:
  std::map<std::string, std::string> mValues;
  std::string mSource;
};

} // namespace spinorlz
