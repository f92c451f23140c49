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

#include <nullswarm/protocol.hpp>

#include <json.hpp>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <iostream>
#include <stdexcept>
#include <thread>

namespace nullswarm {

using nlohmann::json;

namespace {

Vec2 vec_from_json(const json& j)
{
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string error_reply(const std::string& code)
{
  return json{{"ok", false}, {"error", code}}.dump();
}

std::string scalar_text(const json& v)
{
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned())
    return v.dump();
  if (v.is_number())
    return format_double(v.get<double>());
  throw std::invalid_argument("scenario values must be strings or numbers");
}

json violation_json(const std::optional<CollisionFinding::Kind>& v)
{
  return v ? json(to_string(*v)) : json(nullptr);
}

} // anonymous namespace

EnvConfig apply_config_request(EnvConfig cfg, const std::string& request_json)
{
  const json req = json::parse(request_json);
  for (const auto& [key, value] : req.items())
  {
    if (key == "cmd")
      continue;
    if (key == "randomize")
    {
      const auto mode = value.get<std::string>();
      if (mode == "fixed") cfg.randomize = EnvConfig::Randomize::Fixed;
      else if (mode == "randomized") cfg.randomize = EnvConfig::Randomize::Randomized;
      else throw std::invalid_argument("randomize must be fixed or randomized");
    }
    else if (key == "fixed_initials")
    {
      if (!value.is_array())
        throw std::invalid_argument("fixed_initials must be a list");
      std::vector<Vec2> initials;
      for (const auto& p : value)
        initials.push_back(vec_from_json(p));
      cfg.fixed_initials = std::move(initials);
    }
    else if (key == "fixed_jammer") cfg.fixed_jammer = vec_from_json(value);
    else if (key == "jammer_min") cfg.jammer_min = vec_from_json(value);
    else if (key == "jammer_max") cfg.jammer_max = vec_from_json(value);
    else if (key == "reward_scale")
    {
      if (!value.is_number())
        throw std::invalid_argument("reward_scale must be a number");
      cfg.reward_scale = value.get<double>();
    }
    else if (key == "scenario")
    {
      if (!value.is_object())
        throw std::invalid_argument("scenario must be an object");
      for (const auto& [field, v] : value.items())
      {
        try
        {
          set_config_field(cfg.base, field, scalar_text(v));
        }
        catch (const std::runtime_error& e)
        {
          throw std::invalid_argument(e.what());
        }
      }
    }
    else
    {
      throw std::invalid_argument("unknown config field '" + key + "'");
    }
  }
  require_valid(cfg);
  return cfg;
}

//==============================================================================
ProtocolSession::ProtocolSession(EnvConfig defaults)
  : _cfg(std::move(defaults))
{
}

std::string ProtocolSession::handle(const std::string& line)
{
  json req;
  try
  {
    req = json::parse(line);
  }
  catch (const json::parse_error&)
  {
    return error_reply("malformed_json");
  }
  if (!req.is_object())
    return error_reply("malformed_json");

  const auto cmd_it = req.find("cmd");
  if (cmd_it == req.end() || !cmd_it->is_string())
    return error_reply("missing_cmd");
  const std::string cmd = cmd_it->get<std::string>();

  if (cmd == "config")
  {
    try
    {
      EnvConfig next = apply_config_request(_cfg, line);
      _env = std::make_unique<Environment>(next);
      _cfg = std::move(next);
    }
    catch (const std::exception&)
    {
      return error_reply("invalid_config");
    }
    const auto n = static_cast<std::size_t>(_cfg.base.num_uavs);
    return json{{"ok", true}, {"obs_size", observation_size(n)},
      {"action_size", 2 * n}}.dump();
  }

  if (cmd == "reset")
  {
    const auto seed = req.find("seed");
    if (seed == req.end())
      return error_reply("missing_seed");
    if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<long long>() >= 0))
      return error_reply("bad_seed");
    try
    {
      if (!_env)
        _env = std::make_unique<Environment>(_cfg);
      const auto obs = _env->reset(seed->get<std::uint64_t>());
      return json{{"ok", true}, {"obs", obs}}.dump();
    }
    catch (const std::exception&)
    {
      return error_reply("reset_failed");
    }
  }

  if (cmd == "step")
  {
    if (!_env || !_env->started())
      return error_reply("reset_required");
    if (_env->done())
      return error_reply("episode_done");
    const auto action = req.find("action");
    if (action == req.end() || !action->is_array())
      return error_reply("invalid_action");
    std::vector<double> a;
    for (const auto& v : *action)
    {
      if (!v.is_number())
        return error_reply("invalid_action");
      a.push_back(v.get<double>());
    }
    StepResult r;
    try
    {
      r = _env->step(a);
    }
    catch (const std::invalid_argument&)
    {
      return error_reply("invalid_action");
    }
    json info{{"fitness", r.fitness}, {"slot", r.slot},
      {"violation", violation_json(r.violation)}};
    return json{{"ok", true}, {"obs", r.observation}, {"reward", r.reward},
      {"done", r.done}, {"info", info}}.dump();
  }

  if (cmd == "close")
  {
    _closed = true;
    return json{{"ok", true}}.dump();
  }

  return error_reply("unknown_cmd");
}

//==============================================================================
void serve_stream(std::istream& in, std::ostream& out, const EnvConfig& defaults)
{
  ProtocolSession session(defaults);
  std::string line;
  while (!session.closed() && std::getline(in, line))
  {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    out << session.handle(line) << '\n' << std::flush;
  }
}

namespace {

constexpr std::size_t MaxLineBytes = 1 << 20;

bool send_all(int fd, const std::string& data)
{
  std::size_t sent = 0;
  while (sent < data.size())
  {
    const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR)
      continue;
    if (n <= 0)
      return false;
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

void serve_connection(int fd, EnvConfig defaults)
{
  ProtocolSession session(std::move(defaults));
  std::string buffer;
  char chunk[4096];
  bool discarding = false;
  while (!session.closed())
  {
    const ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR)
      continue;
    if (n <= 0)
      break;
    buffer.append(chunk, static_cast<std::size_t>(n));

    std::size_t start = 0;
    for (std::size_t nl; !session.closed()
      && (nl = buffer.find('\n', start)) != std::string::npos; start = nl + 1)
    {
      std::string line = buffer.substr(start, nl - start);
      if (discarding)
      {
        discarding = false;
        continue;
      }
      if (!line.empty() && line.back() == '\r')
        line.pop_back();
      if (line.empty())
        continue;
      if (!send_all(fd, session.handle(line) + "\n"))
      {
        ::close(fd);
        return;
      }
    }
    buffer.erase(0, start);

    if (buffer.size() > MaxLineBytes)
    {
      buffer.clear();
      discarding = true;
      if (!send_all(fd, error_reply("malformed_json") + "\n"))
        break;
    }
  }
  ::close(fd);
}

} // anonymous namespace

void serve_tcp(int port, const EnvConfig& defaults,
  const std::function<void(int)>& on_listening, const std::atomic<bool>* stop,
  const std::string& bind_address)
{
  require_valid(defaults);
  if (port < 0 || port > 65535)
    throw std::invalid_argument("port must be in 0..65535");

  const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listener < 0)
    throw std::runtime_error(std::string("socket: ") + std::strerror(errno));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, bind_address.c_str(), &addr.sin_addr) != 1)
  {
    ::close(listener);
    throw std::invalid_argument("bad bind address '" + bind_address + "'");
  }
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
  {
    const int err = errno;
    ::close(listener);
    if (err == EADDRINUSE)
      throw std::runtime_error("port " + std::to_string(port) + " is in use");
    throw std::runtime_error(std::string("bind: ") + std::strerror(err));
  }
  if (::listen(listener, 16) != 0)
  {
    const int err = errno;
    ::close(listener);
    throw std::runtime_error(std::string("listen: ") + std::strerror(err));
  }

  socklen_t len = sizeof(addr);
  ::getsockname(listener, reinterpret_cast<sockaddr*>(&addr), &len);
  if (on_listening)
    on_listening(ntohs(addr.sin_port));

  while (!stop || !stop->load())
  {
    pollfd pfd{listener, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 200);
    if (ready <= 0)
      continue;
    const int client = ::accept(listener, nullptr, nullptr);
    if (client < 0)
      continue;
    std::thread(serve_connection, client, defaults).detach();
  }
  ::close(listener);
}

} // namespace nullswarm
