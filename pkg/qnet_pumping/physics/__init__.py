from .skr import binary_entropy, transmissivity, raw_key_rate, secret_key_rate, instantaneous_skr
