#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "run_config.hpp"
#include "tcv/common.hpp"

// Exit codes: 0 success, 2 config error, 3 input error, 4 computation error.
int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string stage = "parse-config";
    try {
        const tcv::cli::ParsedCommand parsed = tcv::cli::parse_config(args);
        if (parsed.help_shown) return 0;
        stage = parsed.command;
        tcv::cli::execute(parsed.command, parsed.config);
        return 0;
    } catch (const tcv::ConfigError& e) {
        std::cerr << "tcv: " << stage << ": config error: " << e.what() << '\n';
        return 2;
    } catch (const tcv::InputError& e) {
        std::cerr << "tcv: " << stage << ": input error: " << e.what() << '\n';
        return 3;
    } catch (const tcv::ComputeError& e) {
        std::cerr << "tcv: " << stage << ": computation error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "tcv: " << stage << ": error: " << e.what() << '\n';
        return 4;
    }
}
