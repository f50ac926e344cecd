# ihull tests
