#include "pvi_app.hpp"

int main(int argc, char** argv) { return pvi::app::main_entry(argc, argv); }
