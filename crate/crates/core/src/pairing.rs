// Pairing engine; filled in below.
