#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace floodrisk::cli {

struct Options {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = ".";
  std::string format = "json";

  // Per-command overrides of config values
  std::optional<std::string> model;
  std::optional<std::string> method;
  std::optional<std::string> weights;
  std::optional<int> workers;
  std::optional<std::int64_t> paths;
  std::optional<double> kappa;
  std::optional<std::string> parameter;
  std::optional<std::string> grid;
};

/// Runs one command. Returns the process exit code: 0 on success, 1 for
/// model errors, 2 for input or configuration errors.
int run(const std::string& command, const Options& options);

}  // namespace floodrisk::cli
