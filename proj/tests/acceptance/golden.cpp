// Copyright 2026 The finmeas Authors
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

#include "golden.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "finmeas/cli.hpp"
#include "finmeas/report.hpp"

namespace finmeas::golden {

namespace {

// Splits on blanks; double quotes group words.
std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> out;
  std::string word;
  bool quoted = false, pending = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      pending = true;
    } else if (c == ' ' && !quoted) {
      if (pending) out.push_back(word);
      word.clear();
      pending = false;
    } else {
      word += c;
      pending = true;
    }
  }
  if (quoted) throw std::runtime_error("unbalanced quote in: " + line);
  if (pending) out.push_back(word);
  return out;
}

}  // namespace

std::vector<std::string> models() { return {"measures.json", "metrics.json", "kernels.json"}; }

std::vector<Command> load_commands(const std::string& source_dir) {
  std::ifstream in(source_dir + "/tests/golden/commands.txt");
  if (!in) throw std::runtime_error("cannot read tests/golden/commands.txt");
  std::vector<Command> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto words = split_words(line);
    Command c;
    c.model = words.at(0);
    c.args.assign(words.begin() + 1, words.end());
    c.line = line;
    out.push_back(std::move(c));
  }
  return out;
}

Result run(const std::string& source_dir, const Command& command, bool json) {
  std::vector<std::string> args = command.args;
  args.push_back("-m");
  args.push_back(source_dir + "/docs/models/" + command.model);
  if (json) args.push_back("--json");
  std::ostringstream out, err;
  Result r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string transcript(const std::string& source_dir,
                       const std::vector<Command>& commands,
                       const std::string& model, bool json) {
  std::string text;
  for (const auto& c : commands) {
    if (c.model != model) continue;
    Result r = run(source_dir, c, json);
    text += "$ finmeas";
    for (const auto& a : c.args) {
      text += ' ';
      text += a.find(' ') == std::string::npos ? a : '"' + a + '"';
    }
    text += " -m " + model + (json ? " --json" : "") + "\n";
    text += r.out;
    text += r.err;
    text += "[exit " + std::to_string(r.code) + "]\n\n";
  }
  return text;
}

std::string golden_file(const std::string& transcript) {
  static const std::string header =
    "# Copyright 2026 The finmeas Authors\n"
    "# Licensed under the Apache License, Version 2.0 (the \"License\");\n"
    "# you may not use this file except in compliance with the License.\n"
    "# You may obtain a copy of the License at\n"
    "#\n"
    "#     http://www.apache.org/licenses/LICENSE-2.0\n"
    "#\n"
    "# Unless required by applicable law or agreed to in writing, software\n"
    "# distributed under the License is distributed on an \"AS IS\" BASIS,\n"
    "# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.\n"
    "# See the License for the specific language governing permissions and\n"
    "# limitations under the License.\n"
    "\n";
  return header + transcript;
}

std::string golden_path(const std::string& source_dir, const std::string& model,
                        bool json) {
  std::string stem = model.substr(0, model.find('.'));
  return source_dir + "/tests/golden/" + stem + (json ? ".json.txt" : ".txt");
}

std::string content_mismatch(const Command& command, const Result& text,
                             const Result& json) {
  if (text.code != json.code) return command.line + ": exit codes differ";
  Report::Json parsed;
  try {
    parsed = Report::Json::parse(json.out);
  } catch (const std::exception& e) {
    return command.line + ": JSON output does not parse";
  }
  if (text.code == 0) {
    if (Report::render_text(parsed) != text.out) return command.line + ": content differs";
    return "";
  }
  const auto& error = parsed.at("error");
  std::string expected = "error: " + error.at("message").get<std::string>() + "\n";
  if (text.err.rfind(expected, 0) != 0) return command.line + ": error messages differ";
  return "";
}

}  // namespace finmeas::golden
