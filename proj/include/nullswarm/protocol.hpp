/*
 * Copyright (C) 2026 The nullswarm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#ifndef NULLSWARM__PROTOCOL_HPP
#define NULLSWARM__PROTOCOL_HPP

#include <nullswarm/env.hpp>

#include <atomic>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

namespace nullswarm {

//==============================================================================
/// One client's view of an environment over newline-delimited JSON.
///
/// Requests: {"cmd":"config", ...}, {"cmd":"reset","seed":int},
/// {"cmd":"step","action":[...]}, {"cmd":"close"}.
/// Replies: {"ok":true, ...} or {"ok":false,"error":code}.
class ProtocolSession
{
public:
  explicit ProtocolSession(EnvConfig defaults);

  /// Handles one request line and returns the reply line without a newline.
  std::string handle(const std::string& line);

  bool closed() const { return _closed; }

private:
  EnvConfig _cfg;
  std::unique_ptr<Environment> _env;
  bool _closed = false;
};

/// Applies the fields of a config request on top of `cfg`. Accepted keys:
/// randomize ("fixed" | "randomized"), fixed_initials ([[x, y], ...]),
/// fixed_jammer ([x, y]), reward_scale, jammer_min, jammer_max ([x, y]), and
/// scenario (object of config-file keys). Throws std::invalid_argument.
EnvConfig apply_config_request(EnvConfig cfg, const std::string& request_json);

/// Serves a single session until close or end of input.
void serve_stream(std::istream& in, std::ostream& out, const EnvConfig& defaults);

/// Accepts TCP clients on `port` (0 picks a free one) and serves each on its
/// own thread. Calls `on_listening` with the bound port, then runs until
/// `stop` becomes true. Throws std::runtime_error when the port is taken.
void serve_tcp(int port, const EnvConfig& defaults,
  const std::function<void(int)>& on_listening = {},
  const std::atomic<bool>* stop = nullptr,
  const std::string& bind_address = "127.0.0.1");

} // namespace nullswarm

#endif // NULLSWARM__PROTOCOL_HPP
