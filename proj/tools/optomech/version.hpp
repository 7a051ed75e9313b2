#pragma once

#define OPTOMECH_VERSION "0.1.0"
