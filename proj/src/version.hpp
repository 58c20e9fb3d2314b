#pragma once

#define FCY_VERSION "0.1.0"
