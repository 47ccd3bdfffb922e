#pragma once

#include <string>
#include <vector>

#include "tmlab/annotated_run.hpp"
#include "tmlab/runner.hpp"
#include "tmlab/serializability.hpp"

namespace tmlab {

struct ScenarioOptions {
  std::string tm_name = "mv-invisible";
  int phases = 4;   // c
  int objects = 2;  // L
  int reads = 4;    // m
  int split = -1;   // j; -1 sweeps j = 1..m-1
  CheckBounds bounds;
  bool annotate_poised = true;
};

struct ScenarioRun {
  std::string label;  // "main", "j2-b", ...
  AnnotatedRun run;
};

struct ScenarioResult {
  std::string name;
  bool ok = true;       // every assertion / expected verdict held
  std::string report;   // deterministic line-oriented report
  std::vector<ScenarioRun> runs;
};

// The counterexample from the problem statement: T1 reads X, T2 reads Y,
// writes X and commits, then T1 writes Y and tries to commit.
ScenarioResult scenario_intro(const ScenarioOptions& opts);

// Phase construction growing one version per phase, with per-phase probe
// points, reader extensions, and a final disjoint-writer coda exposing
// shared-clock designs to the weak-DAP scan.
ScenarioResult scenario_theorem1(const ScenarioOptions& opts);

// The strict-DAP adversary: longest unobservable prefix of a solo writer,
// then the four-transaction schedule; reports which disjunct fired.
ScenarioResult scenario_theorem2(const ScenarioOptions& opts);

// The pattern lower bound: a long read-only transaction with one writer
// spliced into read j and another writing the last object, in both
// orderings; counts RAW/AWAR per read.
ScenarioResult scenario_theorem3(const ScenarioOptions& opts);

// Disjoint-access fragments must not contend for weak-DAP designs.
ScenarioResult scenario_lemma1(const ScenarioOptions& opts);

ScenarioResult run_scenario(const std::string& name, const ScenarioOptions& opts);

std::vector<std::string> scenario_names();

}  // namespace tmlab
