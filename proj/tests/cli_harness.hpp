#pragma once

// Drives the installed CLI binary as a subprocess and captures its streams.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef REGROUP_CLI_PATH
#error "REGROUP_CLI_PATH must be defined by the build"
#endif
#ifndef REGROUP_FIXTURE_DIR
#error "REGROUP_FIXTURE_DIR must be defined by the build"
#endif

namespace cliharness {

struct CmdResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

class TempDir {
  public:
    explicit TempDir(const std::string &tag)
    {
        path_ = std::filesystem::temp_directory_path() /
                ("regroup_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path &path() const { return path_; }
    std::string file(const std::string &name) const { return (path_ / name).string(); }

  private:
    std::filesystem::path path_;
};

// Runs `fpga_regroup <args>`; `env` holds KEY=VALUE assignments to prepend.
inline CmdResult run_cli(const std::string &args, const TempDir &dir,
                         const std::string &env = "")
{
    const std::string out_file = dir.file("cmd_stdout.txt");
    const std::string err_file = dir.file("cmd_stderr.txt");
    const std::string command = env + (env.empty() ? "" : " ") + "\"" REGROUP_CLI_PATH "\" " +
                                args + " > \"" + out_file + "\" 2> \"" + err_file + "\"";
    const int status = std::system(command.c_str());
    CmdResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

inline std::string fixture(const std::string &relative)
{
    return std::string(REGROUP_FIXTURE_DIR "/") + relative;
}

} // namespace cliharness
