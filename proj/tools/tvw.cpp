#include "tvw/app/commands.hpp"

int main(int argc, char** argv) { return tvw::app::run_cli(argc, argv); }
