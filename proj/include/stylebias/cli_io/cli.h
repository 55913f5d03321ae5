// Copyright 2026 The StyleBias Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   stylebias <subcommand> [--config PATH] [--out DIR] [--seed N]
//             [--variant NAME] [--preset desk|paper]
//
// Subcommands read and write a working directory (--out, default "out"):
//
//   gen-data   grid demonstrations        -> dataset.jsonl, data/grid/*.csv
//   train      fit model to dataset.jsonl -> model.json, train/<preset>/*
//   adapt      offline variants           -> adapt/<variant>/*
//   rollout    closed loop and model-only -> rollout/<p0|variant>/*
//   eval       every trained p_k          -> eval/pk/*, eval/p0/*
//   online     online variants            -> online/<variant>/*
//   pca        PB space projection        -> pca/pb/*
//   probe      PB linear probes           -> probe/pb/*
//   gradcheck  gradient oracle            -> gradcheck/<preset>/report.csv
//
// STYLEBIAS_THREADS caps training parallelism.

#ifndef STYLEBIAS_CLI_IO_CLI_H_
#define STYLEBIAS_CLI_IO_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace stylebias {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace stylebias

#endif  // STYLEBIAS_CLI_IO_CLI_H_
