// Copyright 2026 The pcnhijack Authors
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

#ifndef PCNHIJACK_SNAPSHOT_H_
#define PCNHIJACK_SNAPSHOT_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pcnhijack/graph.h"

namespace pcnhijack {

// Malformed snapshot. path() names the offending JSON location, e.g.
// "edges[3].capacity".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Parses an lnd `describegraph` JSON document.
//
// Integer fields may be JSON numbers or decimal strings (lnd emits int64 as
// strings). `capacity` is satoshi and is scaled to msat. A missing or null
// node1_policy / node2_policy disables that direction. Channel height comes
// from the packed short channel id when numeric, else 0.
//
// Two optional per-edge extension fields written by SerializeSnapshot take
// precedence when present: `capacity_msat` and `height`.
//
// Throws ParseError for malformed input and GraphError for edges that
// reference unknown nodes.
ChannelGraph ParseSnapshot(std::string_view json);
ChannelGraph LoadSnapshot(const std::filesystem::path& path);

// describegraph-shaped serialization in index order, two-space
// indentation, trailing newline. ParseSnapshot(SerializeSnapshot(g)) == g.
std::string SerializeSnapshot(const ChannelGraph& graph);

}  // namespace pcnhijack

#endif  // PCNHIJACK_SNAPSHOT_H_
