#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinsker {

// Config/usage problems. The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  std::string field;

  ConfigError(std::string field_in, const std::string& message)
      : std::runtime_error(field_in.empty() ? message
                                            : field_in + ": " + message),
        field(std::move(field_in)) {}
};

// Flat key-value config: one `section.key = value` per line, '#' comments.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  long long get_long(const std::string& key) const;
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;
  std::vector<long long> get_long_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace pinsker
