#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cli/execute.hpp"
#include "cli/parse.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const ccc::cli::RunSpec spec = ccc::cli::parse_args(args);
    const ccc::cli::Report report = ccc::cli::execute(spec);
    const std::string rendered = report.render();
    if (spec.out.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream out(spec.out, std::ios::binary);
      if (!out) {
        std::cerr << "ccc: cannot write " << spec.out << "\n";
        return 1;
      }
      out << rendered;
    }
    return 0;
  } catch (const ccc::cli::HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "ccc: " << e.what() << "\n";
    return 1;
  }
}
