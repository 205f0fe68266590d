#include "spinorlz/keyvalue.hpp"

#include "spinorlz/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace spinorlz {

KeyValueFile KeyValueFile::parse(std::string_view text, std::string source)
{
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try
  {
    boost::property_tree::ini_parser::read_ini(in, tree);
  }
  catch (const boost::property_tree::ini_parser_error& e)
  {
    throw InvalidArgument(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  KeyValueFile file;
  file.mSource = std::move(source);
  for (const auto& [key, node] : tree)
  {
    if (!node.empty())
      throw InvalidArgument(file.mSource + ": sections are not supported ([" + key + "])");
    file.mValues[key] = node.data();
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

std::optional<std::string> KeyValueFile::maybe_text(const std::string& key) const
{
  const auto it = mValues.find(key);
  if (it == mValues.end())
    return std::nullopt;
  return it->second;
}

std::string KeyValueFile::text(const std::string& key) const
{
  if (auto value = maybe_text(key))
    return *value;
  throw InvalidArgument(mSource + ": missing key '" + key + "'");
}

std::optional<double> KeyValueFile::maybe_number(const std::string& key) const
{
  const auto value = maybe_text(key);
  if (!value)
    return std::nullopt;
  double x = 0.0;
  const char* first = value->data();
  const char* last = first + value->size();
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || !std::isfinite(x))
    throw InvalidArgument(mSource + ": key '" + key + "' is not a finite number: '" + *value + "'");
  return x;
}

double KeyValueFile::number(const std::string& key) const
{
  if (auto value = maybe_number(key))
    return *value;
  throw InvalidArgument(mSource + ": missing key '" + key + "'");
}

std::vector<std::string> KeyValueFile::keys() const
{
  std::vector<std::string> out;
  for (const auto& [key, value] : mValues)
    out.push_back(key);
  return out;
}

} // namespace spinorlz
