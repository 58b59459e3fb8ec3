#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cli.hpp"

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("lightwake");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("LIGHTWAKE_LOG_LEVEL"))
    spdlog::set_level(spdlog::level::from_str(level));

  std::vector<std::string> args(argv, argv + argc);
  return lightwake::cli::run(args, std::cout, std::cerr);
}
