#include <cstdlib>
#include <cstring>
#include <iostream>

#include "bergsuita/acceptance.hpp"

int main(int argc, char** argv) {
  bergsuita::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) options.quick = true;
  const auto results = bergsuita::run_acceptance(
      options, [](const bergsuita::CriterionResult& r) { bergsuita::print_result(std::cout, r); });
  return bergsuita::all_passed(results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
