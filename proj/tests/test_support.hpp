// Helpers shared by the test binaries.
#pragma once

#include "ucm/parser.hpp"
#include "ucm/pipeline.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace ucm::testing {

inline std::filesystem::path corpusPath(const std::string& name)
{
    return std::filesystem::path(UCM_CORPUS_DIR) / name;
}

inline std::filesystem::path fixturePath(const std::string& rel)
{
    return std::filesystem::path(UCM_FIXTURE_DIR) / rel;
}

/// Parses, resolves and validates; throws when the model is absent.
inline CheckResult checkText(const std::string& text, const std::string& file = "test.ucm")
{
    return checkModel(text, file);
}

inline ResolvedModel loadCorpus(const std::string& name)
{
    const auto path = corpusPath(name);
    auto result = checkModel(readSourceFile(path), path.string());
    if (!result.ok())
        throw std::runtime_error("corpus " + name + " does not check cleanly");
    return std::move(*result.model);
}

/// A small model that checks clean; tests append or patch text.
inline const char* kMiniModel = R"(model Mini

modes {
  default normal Normal offers Core
  degraded Limited offers Core
}

exceptions {
  exception HardwareException::Jam
  exception NetworkException::Outage global
}

services {
  service Core provides Top
}

usecase Top {
  scope: "Shop"
  level: user-goal
  intention: "User buys."
  multiplicity: "Many users."
  primary: Human::User
  main {
    1. User -> System : "asks"
    2. invoke Mid
    3. System -> User : "answers"
    outcome success
  }
  extensions {
    block 3a exceptional when "Network drops" {
      3a1. raise NetworkException::Outage
      outcome failure
    }
  }
}

usecase Mid {
  scope: "Shop"
  level: sub-function
  intention: "System works."
  multiplicity: "One at a time."
  primary: Device::Box
  main {
    1. System -> Box : "pokes"
    outcome success
  }
  extensions {
    block 1a exceptional when "Box jams" {
      mode switch: Limited
      1a1. raise HardwareException::Jam
      outcome continue 1
    }
  }
}

handler Unjam {
  scope: "Shop"
  level: user-goal
  intention: "Tech unjams."
  multiplicity: "One at a time."
  primary: Human::Tech
  contexts: Mid on HardwareException::Jam interrupt-continue
  main {
    1. System -> Tech : "calls"
    mode switch: Normal
    outcome success
  }
}

handler Reroute {
  scope: "Shop"
  level: user-goal
  intention: "System reroutes."
  multiplicity: "One at a time."
  primary: Software::Router
  contexts: Top on NetworkException::Outage interrupt-fail
  main {
    1. System -> Router : "reroutes"
    outcome success
  }
}
)";

} // namespace ucm::testing
