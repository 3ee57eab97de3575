"""NPT certificates for states supported on S"""
