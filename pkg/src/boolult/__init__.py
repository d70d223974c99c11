"""Boolean-valued models over finite algebras and Boolean ultrapowers."""
