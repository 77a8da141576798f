#ifndef SIRUV_CLI_HPP
#define SIRUV_CLI_HPP

namespace siruv::cli {

/**
 * Entry point behind the zikasim executable. Subcommands:
 *   simulate          integrate one scenario, write trajectory CSV + conservation report
 *   compare-decoupled run the decoupling experiment for both multi-patch models
 *   presets           list or show built-in scenarios
 *
 * Returns 0 on success, 1 on usage/validation errors, 2 on numerical failure.
 */
int run(int argc, const char* const* argv);

} // namespace siruv::cli

#endif
