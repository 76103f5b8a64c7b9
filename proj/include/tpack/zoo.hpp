#ifndef TPACK_ZOO_HPP
#define TPACK_ZOO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "tpack/lfgraph.hpp"
#include "tpack/multigraph.hpp"
#include "tpack/periodic.hpp"

namespace tpack {

struct ZooEntry {
  std::string name;
  std::string params;       // human description of the parameters, "" if none
  std::string description;
  std::string default_terminals;  // shorthand accepted by the CLI
  bool finite = false;
};

const std::vector<ZooEntry>& zoo_entries();
bool zoo_has(const std::string& name);
const ZooEntry& zoo_entry(const std::string& name);

/// Finite entries only; throws Domain for infinite ones.
MultiGraph zoo_graph(const std::string& name, const std::vector<long>& params);

/// Works for every entry; finite graphs are wrapped as end-free presentations.
LFGraphPresentation zoo_presentation(const std::string& name,
                                     const std::vector<long>& params);

/// Periodic description of an infinite entry (the exportable form).
PeriodicDesc zoo_periodic(const std::string& name, const std::vector<long>& params);

/// Documented properties, audited at build time.
nlohmann::json zoo_describe(const std::string& name, const std::vector<long>& params);

}  // namespace tpack

#endif
